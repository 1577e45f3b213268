#include "tiltz/arith.hpp"

#include <ostream>

#include "tiltz/admissible.hpp"
#include "tiltz/padic.hpp"

namespace tiltz {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::int64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
  // p is prime, so x^(p-2) is the inverse.
  return pow(static_cast<std::uint64_t>(p_ - 2));
}

Fp Fp::pow(std::uint64_t e) const {
  Fp result(p_, 1, 0), base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

Fp f_of(std::int64_t a, Prime p) {
  if (a < 0 || a >= p.value()) throw std::out_of_range("f_of: digit out of range");
  if (a == 0 || a == p.value() - 1) return Fp(0, p);
  Fp r = Fp(2, p) / Fp(a, p);
  return (a % 2 == 0) ? r : -r;
}

Fp g_of(std::int64_t a, Prime p) {
  if (a < 0 || a >= p.value()) throw std::out_of_range("g_of: digit out of range");
  if (a == 0) return Fp(-2, p);
  return -(Fp(a + 1, p) / Fp(a, p));
}

namespace {

std::int64_t digit_above(const AdmissibleSet& s, Vertex v, Prime p) {
  if (s.empty()) throw std::invalid_argument("scaling operator on empty set");
  return digit(v, s.max() + 1, p);
}

}  // namespace

Fp scale_f(const AdmissibleSet& s, Vertex v, Prime p) { return f_of(digit_above(s, v, p), p); }

Fp scale_g(const AdmissibleSet& s, Vertex v, Prime p) { return g_of(digit_above(s, v, p), p); }

Fp scale_h(const AdmissibleSet& s, Vertex v, Prime p) {
  return g_of(Fp::reduce(digit_above(s, v, p) - 1, p.value()), p);
}

}  // namespace tiltz
