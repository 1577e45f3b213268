#pragma once

// Finite sets of digit positions split into stretches, together with the
// down/up admissibility conditions and the reflections v[S] and v(S).

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiltz/arith.hpp"

namespace tiltz {

/// The consecutive run {lo, ..., hi}.
struct Stretch {
  int lo = 0;
  int hi = 0;

  bool contains(int i) const noexcept { return lo <= i && i <= hi; }
  friend auto operator<=>(const Stretch&, const Stretch&) = default;
};

/// A finite subset of N_0 stored as its coarsest partition into stretches:
/// sorted ascending, pairwise separated by a gap of at least one integer.
class AdmissibleSet {
public:
  AdmissibleSet() = default;
  AdmissibleSet(Stretch s);  // NOLINT: a stretch is a set
  static AdmissibleSet from_elements(std::vector<int> elements);
  static AdmissibleSet from_stretches(const std::vector<Stretch>& parts);
  static AdmissibleSet singleton(int i) { return AdmissibleSet(Stretch{i, i}); }
  /// Parse `{5,4,3|0}`-style text; separators `,` and `|` are equivalent.
  static AdmissibleSet parse(std::string_view text);

  const std::vector<Stretch>& stretches() const noexcept { return parts_; }
  std::vector<int> elements() const;
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept;
  int min() const;
  int max() const;
  bool contains(int i) const noexcept;
  bool is_stretch() const noexcept { return parts_.size() == 1; }

  bool is_subset_of(const AdmissibleSet& other) const;
  AdmissibleSet unite(const AdmissibleSet& other) const;
  AdmissibleSet intersect(const AdmissibleSet& other) const;
  AdmissibleSet minus(const AdmissibleSet& other) const;
  /// True when every element of *this is strictly greater than every element
  /// of `other` (written *this > other). Vacuous for empty operands.
  bool above(const AdmissibleSet& other) const;

  /// Canonical text: elements descending, `|` between stretches, e.g. {5,4,3|0}.
  std::string to_string() const;

  friend bool operator==(const AdmissibleSet&, const AdmissibleSet&) = default;
  friend auto operator<=>(const AdmissibleSet& a, const AdmissibleSet& b) {
    return a.parts_ <=> b.parts_;
  }

private:
  std::vector<Stretch> parts_;
};

/// min |s - t|; throws std::invalid_argument if either set is empty.
int distance(const AdmissibleSet& s, const AdmissibleSet& t);

bool is_down_admissible(const AdmissibleSet& s, Vertex v, Prime p);
bool is_up_admissible(const AdmissibleSet& s, Vertex v, Prime p);

/// v[S]; throws std::invalid_argument unless S is down-admissible for v.
Vertex reflect_down(Vertex v, const AdmissibleSet& s, Prime p);
/// v(S); throws std::invalid_argument unless S is up-admissible for v.
Vertex reflect_up(Vertex v, const AdmissibleSet& s, Prime p);

/// The smallest down-admissible set containing S, if it exists.
std::optional<AdmissibleSet> down_hull(const AdmissibleSet& s, Vertex v, Prime p);

/// Minimal down-admissible stretches of v, ascending: one per nonzero
/// non-leading digit i, running from i through the zeros above it.
std::vector<Stretch> minimal_down_stretches(Vertex v, Prime p);
/// Minimal up-admissible stretches of v, ascending by lower end: one per
/// nonzero digit i (the leading digit included), running from i through the
/// digits equal to p-1 above it.
std::vector<Stretch> minimal_up_stretches(Vertex v, Prime p);

bool is_minimal_down_stretch(Stretch s, Vertex v, Prime p);
bool is_minimal_up_stretch(Stretch s, Vertex v, Prime p);

std::string to_string(Stretch s);

}  // namespace tiltz
