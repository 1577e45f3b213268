#pragma once

// The quantum, G1T and G2T Ringel duals as quadratic quiver algebras on
// finite windows, their centers, and Donkin's tensor factorization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiltz/linalg.hpp"
#include "tiltz/quiver.hpp"

namespace tiltz {

enum class VariantKind { QuantumGeneric, QuantumRoot, G1T, G2T };

struct VariantSpec {
  VariantKind kind = VariantKind::QuantumGeneric;
  std::int64_t base = 0;  // k for QuantumRoot, p for G1T/G2T, 0 for generic
  /// G2T only: at the vertices of columns 0 and p, the neighbour's column loop
  /// conjugated back to the vertex is zero. Without it the printed quadratic
  /// relations leave a third basis element in e_i Z e_i for p | i.
  bool boundary_transport = true;

  /// k = 0 selects the generic case k = infinity.
  static VariantSpec quantum(std::int64_t k);
  static VariantSpec g1t(std::int64_t p);
  static VariantSpec g2t(std::int64_t p, bool boundary_transport = true);

  std::string name() const;
  /// Prime used for coefficients. The variants carry no scalars, so the
  /// quantum cases use a large prime standing in for characteristic zero.
  std::int64_t field() const;
  /// Whether vertex indices run over Z rather than N.
  bool two_sided() const { return kind == VariantKind::G1T || kind == VariantKind::G2T; }
};

struct GridVertex {
  std::int64_t index = 0;
  Vertex value = 1;  // v_i; the weight is v_i - 1
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend bool operator==(const GridVertex&, const GridVertex&) = default;
};

/// v_i. Quantum: v_0 = 1, v_{i+1} = v_i(0) in base k; generic: v_i = i + 1.
/// G1T/G2T extend to i < 0 by v_{-i} = -v_i + 2 (i even), -v_i + 2p - 2 (i odd).
Vertex variant_value(const VariantSpec& spec, std::int64_t i);
/// Index, value and G2T grid position (rows snake: even rows run left to
/// right over columns 0..p-1, odd rows right to left over 1..p).
GridVertex grid_vertex(const VariantSpec& spec, std::int64_t i);
/// All vertices with |v_i| <= bound, ascending by index.
std::vector<GridVertex> variant_vertices(const VariantSpec& spec, Vertex bound);
/// Indices in column j of the G2T grid within [lo, hi].
std::vector<std::int64_t> grid_column(const VariantSpec& spec, std::int64_t j, std::int64_t lo,
                                      std::int64_t hi);

/// Whether v lies in the quantum Steinberg summand. `weight_reading` applies
/// the a_0 = 0 condition to v - 1 instead of v.
bool quantum_steinberg(Vertex v, std::int64_t k, bool weight_reading = false);

struct Arrow {
  std::int64_t source;
  std::int64_t target;
  Kind kind;
  int digit;  // 0 horizontal, 1 vertical
};

/// A path as arrow ids in order of application; the source disambiguates the
/// empty path.
struct Path {
  std::int64_t source = 0;
  std::vector<std::size_t> arrows;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// A linear combination of normal paths with common endpoints.
struct Element {
  std::int64_t p = 2;
  std::int64_t source = 0;
  std::int64_t target = 0;
  std::map<Path, std::int64_t> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Path& w, std::int64_t c);
  Element& operator+=(const Element& o);
  friend bool operator==(const Element& a, const Element& b) {
    return a.source == b.source && a.target == b.target && a.terms == b.terms;
  }
};

/// The variant algebra restricted to the vertex window [lo, hi] (whole rows
/// for G2T), i.e. the quotient by all idempotents outside the window.
/// Normal forms come from row-reducing the ideal degree by degree.
class VariantAlgebra {
public:
  VariantAlgebra(const VariantSpec& spec, std::int64_t lo, std::int64_t hi);

  const VariantSpec& spec() const { return spec_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::int64_t prime() const { return p_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::vector<std::size_t> arrows_from(std::int64_t x) const;
  bool contains(std::int64_t x) const { return x >= lo_ && x <= hi_; }
  /// Highest degree with a nonzero normal path.
  int top_degree() const { return static_cast<int>(layers_.size()) - 1; }

  /// The arrow of the given kind and digit leaving x, if any.
  std::optional<std::size_t> arrow(std::int64_t x, Kind kind, int digit) const;
  Element idempotent(std::int64_t x) const;
  /// Normal form of an arbitrary path.
  Element reduce(const Path& w) const;
  /// f after g.
  Element compose(const Element& f, const Element& g) const;
  /// Normal paths from x to y, all degrees, in a fixed order.
  std::vector<Path> basis(std::int64_t x, std::int64_t y) const;
  std::size_t end_dim(std::int64_t x) const { return basis(x, x).size(); }

  /// Loop through the neighbour reached by (kind, digit) at x, or zero.
  Element loop(std::int64_t x, Kind kind, int digit) const;
  /// Row loop l_x and, on G2T, column loop l'_x (zero where absent).
  Element row_loop(std::int64_t x) const;
  Element column_loop(std::int64_t x) const;

  /// `2*e[3] U{0} D{0} e[3] + ...`, indices in brackets.
  std::string to_string(const Element& e) const;
  std::string path_string(const Path& w) const;

private:
  struct Layer {
    // (source, target) -> paths of this degree, and the row-reduced ideal
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Path>> paths;
    std::map<std::pair<std::int64_t, std::int64_t>, RowReducer> ideal;
  };
  std::int64_t end_of(const Path& w) const;
  std::vector<Path> paths_from(std::int64_t x, std::size_t len) const;
  std::vector<std::vector<std::pair<Path, std::int64_t>>> relations_at(std::int64_t x) const;
  void build();

  VariantSpec spec_;
  std::int64_t lo_, hi_, p_;
  std::vector<Arrow> arrows_;
  std::map<std::int64_t, std::vector<std::size_t>> out_;
  std::vector<Layer> layers_;
};

/// Default window around the origin: n vertices per side (rows for G2T).
VariantAlgebra variant_window(const VariantSpec& spec, std::int64_t n);

/// A word `c*e[j] U{0} D{1} e[i]` (indices, applied right to left) or a sum of
/// such; throws std::invalid_argument on bad syntax, an endpoint mismatch, or a
/// letter with no arrow.
Element variant_compose(const VariantAlgebra& a, std::string_view word);

struct VariantCandidate {
  std::string label;
  std::map<std::int64_t, Element> support;
};

/// Whether x keeps distance `margin` (rows for G2T) from the open window ends.
bool variant_interior(const VariantAlgebra& a, std::int64_t x, std::int64_t margin);

/// The predicted central family: 1, then the per-vertex loops at interior
/// vertices, then (G2T) the column sums L_{c(j)} over the whole window. The
/// generic quantum case has one idempotent per vertex instead.
std::vector<VariantCandidate> variant_predicted(const VariantAlgebra& a, std::int64_t margin);

struct VariantCenterReport {
  std::string variant;
  std::int64_t lo = 0, hi = 0, margin = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t nullity = 0;
  std::size_t interior_dim = 0;
  std::size_t predicted_dim = 0;
  std::size_t family_size = 0;
  bool candidates_central = true;
  bool products_zero = true;
  bool matches_prediction = false;
  std::vector<std::string> basis;
  std::vector<std::string> failures;
  bool ok() const { return candidates_central && products_zero && matches_prediction; }
};

/// Commutant of the arrows on the window, projected to the interior (margin
/// vertices, or rows for G2T, cut from each open end), compared with the
/// predicted family.
VariantCenterReport variant_center(const VariantAlgebra& a, std::int64_t margin);
std::string variant_center_json(const VariantCenterReport& r);

struct DonkinFactor {
  std::int64_t weight;  // T(weight)
  int twist;
  friend bool operator==(const DonkinFactor&, const DonkinFactor&) = default;
};

struct DonkinFactorization {
  std::int64_t p = 2;
  std::vector<DonkinFactor> factors;  // twists strictly decreasing

  /// Drop the T(p-1) factors from zero digits.
  DonkinFactorization pruned() const;
  /// Drop trivial T(0) factors.
  DonkinFactorization without_trivial() const;
  /// `T(2)^(6) (x) T(7)^(5) ...`; `T(0)` for the empty product.
  std::string to_string() const;
  /// Recover v from a full (unpruned) factor list.
  Vertex value() const;
};

/// T(v-1) = T(a_j - 1)^(j) (x) prod_{i<j} T(a_i + p - 1)^(i).
DonkinFactorization donkin_factorize(Vertex v, Prime p);

struct DonkinSplit {
  Vertex upper;  // w': the digits of w from position j up
  Vertex lower;  // v': digit 1 at position j over the digits of w below j
  int j;
  DonkinFactorization upper_twisted;  // T(w'-1)^(j)
  DonkinFactorization lower_factors;  // T(v'-1)
};
/// T(w-1) = T(w'-1)^(j) (x) T(v'-1) for 0 < j <= leading index.
DonkinSplit donkin_split(Vertex w, int j, Prime p);
std::string donkin_json(Vertex v, Prime p);

}  // namespace tiltz
