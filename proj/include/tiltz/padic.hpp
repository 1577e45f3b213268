#pragma once

// Base-p digit strings, possibly with negative or overflowing digits.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiltz/arith.hpp"

namespace tiltz {

/// A digit string [a_j,...,a_0]_p. Storage is little-endian: digits()[i] is
/// the coefficient of p^i. Digits may be negative or >= p until normalized.
class PadicDigits {
public:
  PadicDigits(std::vector<std::int64_t> little_endian, Prime p);

  /// Build from the big-endian order used in the bracket notation.
  static PadicDigits from_big_endian(const std::vector<std::int64_t>& digits, Prime p);
  /// Parse `[a_j,...,a_0]_p`. Throws std::invalid_argument on bad syntax.
  static PadicDigits parse(std::string_view text);

  const std::vector<std::int64_t>& digits() const noexcept { return digits_; }
  Prime prime() const noexcept { return p_; }

  /// Sum of digits()[i] * p^i; mixed signs allowed.
  std::int64_t value() const;
  /// All digits in [0, p) with a nonzero leading digit (empty for zero).
  bool is_canonical() const;
  /// Canonical digits with the same value. Throws on negative value.
  PadicDigits normalize() const;

  std::vector<std::int64_t> big_endian() const;
  /// `[a_j,...,a_0]_p`, echoing negative digits as given.
  std::string to_string() const;

  friend bool operator==(const PadicDigits& a, const PadicDigits& b) {
    return a.p_ == b.p_ && a.digits_ == b.digits_;
  }

private:
  std::vector<std::int64_t> digits_;
  Prime p_;
};

/// Canonical expansion of v >= 1. Throws std::invalid_argument for v <= 0.
PadicDigits expand(Vertex v, Prime p);
/// Digit a_i of v (0 above the leading digit). Requires v >= 0.
std::int64_t digit(Vertex v, int i, Prime p);
/// Index j of the leading digit. Requires v >= 1.
int leading_index(Vertex v, Prime p);
/// p^k, exact.
std::int64_t ipow(std::int64_t p, int k);

/// Number of nonzero digits minus one.
int generation(Vertex v, Prime p);
bool is_eve(Vertex v, Prime p);

struct Eve {
  Vertex value;
  bool below_p;  // Eve^{<p} versus Eve^{>=p}
  friend bool operator==(const Eve&, const Eve&) = default;
};
/// All eves <= n in ascending order.
std::vector<Eve> eves_below(Vertex n, Prime p);

/// v with its lowest nonzero digit set to zero; nullopt for eves.
std::optional<Vertex> mother(Vertex v, Prime p);

/// D_v: positions of the nonzero, non-leading digits, ascending.
using DigitSet = std::vector<int>;
DigitSet digit_set(Vertex v, Prime p);
std::string to_string(const DigitSet& d);

}  // namespace tiltz
