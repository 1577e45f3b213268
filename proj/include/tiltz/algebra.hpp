#pragma once

// The algebra Z: basis words, morphisms, and the rewriting engine that
// expands any word in the generators into the normal-form basis.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tiltz/admissible.hpp"
#include "tiltz/quiver.hpp"

namespace tiltz {

/// A generator applied at whatever vertex the word has reached.
struct Letter {
  Kind kind;
  Stretch stretch;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// e_{w-1} U_{S'_l}...U_{S'_0} D_{S_0}...D_{S_k} e_{v-1}. Both lists are kept
/// ascending; downs are applied from the back, ups from the front.
struct BasisWord {
  Vertex source = 1;
  Vertex target = 1;
  std::vector<Stretch> downs;
  std::vector<Stretch> ups;

  static BasisWord identity(Vertex v) { return {v, v, {}, {}}; }
  /// Build from the two chains, computing the target. Throws
  /// std::invalid_argument if a step is not a generator or the order is wrong.
  static BasisWord make(Vertex source, std::vector<Stretch> downs, std::vector<Stretch> ups,
                        Prime p);

  /// Generators in order of application.
  std::vector<Letter> letters() const;
  /// Vertex reached after all downs.
  Vertex middle(Prime p) const;
  bool is_identity() const noexcept { return downs.empty() && ups.empty(); }
  /// The word as text, e.g. `e[11] U{1,0} D{1} e[13]`.
  std::string to_string(bool weights = false) const;

  friend bool operator==(const BasisWord&, const BasisWord&) = default;
  friend auto operator<=>(const BasisWord& a, const BasisWord& b) {
    if (auto c = a.source <=> b.source; c != 0) return c;
    if (auto c = a.target <=> b.target; c != 0) return c;
    if (auto c = a.downs <=> b.downs; c != 0) return c;
    return a.ups <=> b.ups;
  }
};

struct BasisWordHash {
  std::size_t operator()(const BasisWord& w) const noexcept;
};

/// A finite F_p-linear combination of basis words with common endpoints.
class Morphism {
public:
  Morphism(Prime p, Vertex source, Vertex target) : p_(p), source_(source), target_(target) {}
  static Morphism identity(Prime p, Vertex v);
  static Morphism of(Prime p, const BasisWord& w, std::int64_t coeff = 1);

  Prime prime() const noexcept { return p_; }
  Vertex source() const noexcept { return source_; }
  Vertex target() const noexcept { return target_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Terms in deterministic order; coefficients lie in [1, p).
  const std::map<BasisWord, std::int64_t>& terms() const noexcept { return terms_; }
  Fp coefficient(const BasisWord& w) const;

  void add(const BasisWord& w, std::int64_t coeff);
  Morphism& operator+=(const Morphism& o);
  Morphism& operator-=(const Morphism& o);
  Morphism operator+(const Morphism& o) const { Morphism r = *this; return r += o; }
  Morphism operator-(const Morphism& o) const { Morphism r = *this; return r -= o; }
  Morphism scaled(std::int64_t c) const;

  /// `0` or a sum like `2*e[11] U{1,0} D{1} e[13] + e[13] e[13]`.
  std::string to_string(bool weights = false) const;
  /// {p, source, target, terms:[{downs, ups, coeff}]}.
  std::string to_json() const;

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.p_ == b.p_ && a.source_ == b.source_ && a.target_ == b.target_ && a.terms_ == b.terms_;
  }

private:
  void check(const Morphism& o) const;

  Prime p_;
  Vertex source_;
  Vertex target_;
  std::map<BasisWord, std::int64_t> terms_;
};

/// A word in generators, possibly non-minimal ones as in the generalized
/// D_S and U_S, applied from `source` in order.
struct RawWord {
  Vertex source = 1;
  std::vector<std::pair<Kind, AdmissibleSet>> letters;  // order of application
  std::int64_t scalar = 1;
  std::optional<Vertex> target;  // expected end vertex, if given
};

/// Parse `2*e[w] U{2,1} D{0} e[v]` (rightmost letter applied first). Vertex
/// labels are read as weights v-1 when `weights` is true. Throws
/// std::invalid_argument on bad syntax.
RawWord parse_word(std::string_view text, bool weights = false);
/// Parse a sum of words separated by `+`; `0` is the empty sum.
std::vector<RawWord> parse_word_sum(std::string_view text, bool weights = false);

enum class Strategy { Leftmost, Rightmost };

/// The rewriting engine. Holds a memo table, so one engine per thread.
class Engine {
public:
  explicit Engine(Prime p, std::size_t memo_cap = default_memo_cap());

  /// Memo cap from TILTZ_MEMO_CAP, else 2'000'000 entries.
  static std::size_t default_memo_cap();

  Prime prime() const noexcept { return p_; }

  /// Normal form of g applied after b; g must be a generator at b.target.
  Morphism left_mul(const Letter& g, const BasisWord& b);
  Morphism apply(const Letter& g, const Morphism& m);
  /// f after g.
  Morphism compose(const Morphism& f, const Morphism& g);

  /// Generalized D_S e_{v-1}; nullopt unless S is down-admissible for v.
  std::optional<std::vector<Letter>> expand_down(const AdmissibleSet& s, Vertex v) const;
  /// Generalized U_S e_{v-1}; nullopt unless S decomposes into successive
  /// minimal up stretches, ascending.
  std::optional<std::vector<Letter>> expand_up(const AdmissibleSet& s, Vertex v) const;

  Morphism generalized_down(const AdmissibleSet& s, Vertex v);
  Morphism generalized_up(const AdmissibleSet& s, Vertex v);
  Morphism generator_morphism(const Generator& g);

  /// Normal form of a raw word; letters that are not admissible at their
  /// running vertex make the word zero.
  Morphism normalize(const RawWord& w);
  /// Independent normalizer for the confluence check: rewrite whole words,
  /// always choosing the leftmost or the rightmost non-normal pair.
  Morphism normalize_by_strategy(const RawWord& w, Strategy s);

  std::size_t memo_size() const noexcept { return memo_.size(); }
  std::size_t rule_applications() const noexcept { return steps_; }

  struct Term {
    std::int64_t coeff;
    std::vector<std::pair<Kind, AdmissibleSet>> letters;  // order of application
  };
  /// Right-hand side for the adjacent pair `first` then `second` at vertex x,
  /// or nullopt when the pair is already in normal order.
  std::optional<std::vector<Term>> rewrite_pair(Vertex x, const Letter& first,
                                                const Letter& second) const;

private:
  struct Key {
    Letter g;
    BasisWord b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Vertex step(Vertex x, const Letter& g) const;
  bool is_generator(Vertex x, const Letter& g) const;
  /// Expand generalized letters at running vertices; nullopt if inadmissible.
  std::optional<std::vector<Letter>> expand(Vertex x,
                                            const std::vector<std::pair<Kind, AdmissibleSet>>& ls,
                                            Vertex* end = nullptr) const;

  Prime p_;
  std::size_t memo_cap_;
  std::unordered_map<Key, Morphism, KeyHash> memo_;
  std::unordered_set<Key, KeyHash> active_;
  std::size_t steps_ = 0;
  std::size_t word_steps_ = 0;
};

/// Vertex after applying a minimal generator; throws if it is not one.
Vertex apply_letter(Vertex x, const Letter& g, Prime p);
bool is_generator_at(Vertex x, const Letter& g, Prime p);

/// Basis of e_{w-1} Z e_{v-1} by matching subsets of minimal down stretches.
std::vector<BasisWord> hom_basis(Vertex v, Vertex w, Prime p);
/// The same basis by depth-first enumeration of ordered chains.
std::vector<BasisWord> hom_basis_by_chains(Vertex v, Vertex w, Prime p);
std::size_t hom_dim(Vertex v, Vertex w, Prime p);

struct EndRing {
  Vertex v;
  std::vector<Stretch> stretches;
  std::vector<Morphism> loops;  // L_S = U_S D_S e_{v-1}, one per stretch
  bool squares_zero = true;
  bool commute = true;
  bool products_are_loops = true;  // L_S equals the product of its parts
  std::size_t span_dim = 0;        // dimension of the span of all products
  bool ok() const { return squares_zero && commute && products_are_loops; }
};
EndRing end_ring(Vertex v, Engine& engine);

/// Loop U_S D_S e_{v-1} for a down-admissible S.
Morphism loop(const AdmissibleSet& s, Vertex v, Engine& engine);

struct Truncation {
  Prime p;
  Vertex bound;
  std::optional<Vertex> eve;
};
/// Drop words that pass through a vertex above the bound.
Morphism truncate(const Morphism& m, const Truncation& t);

}  // namespace tiltz
