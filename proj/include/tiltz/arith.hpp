#pragma once

// Prime-field arithmetic and the scalar functions f, g used by the relations
// of the Ringel dual.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>

namespace tiltz {

using Vertex = std::int64_t;

class AdmissibleSet;

/// A prime p >= 2. Primality is checked on construction.
class Prime {
public:
  explicit Prime(std::int64_t p);

  std::int64_t value() const noexcept { return p_; }
  operator std::int64_t() const noexcept { return p_; }

  friend bool operator==(Prime, Prime) = default;

private:
  std::int64_t p_;
};

bool is_prime(std::int64_t n) noexcept;

/// An element of F_p. The value is always reduced into [0, p).
class Fp {
public:
  Fp(std::int64_t value, Prime p) : p_(p.value()), v_(reduce(value, p_)) {}

  std::int64_t value() const noexcept { return v_; }
  Prime prime() const { return Prime(p_); }
  std::int64_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp operator+(Fp o) const { check(o); return Fp(p_, v_ + o.v_, 0); }
  Fp operator-(Fp o) const { check(o); return Fp(p_, v_ - o.v_ + p_, 0); }
  Fp operator*(Fp o) const { check(o); return Fp(p_, v_ * o.v_, 0); }
  Fp operator-() const { return Fp(p_, p_ - v_, 0); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  /// Multiplicative inverse; throws std::domain_error on zero.
  Fp inverse() const;
  Fp operator/(Fp o) const { return *this * o.inverse(); }
  Fp pow(std::uint64_t e) const;

  friend bool operator==(const Fp& a, const Fp& b) noexcept {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

  static std::int64_t reduce(std::int64_t x, std::int64_t p) noexcept {
    x %= p;
    return x < 0 ? x + p : x;
  }

private:
  // Unchecked constructor for already-bounded intermediate values.
  Fp(std::int64_t p, std::int64_t raw, int) : p_(p), v_(raw % p) {}

  void check(const Fp& o) const {
    if (o.p_ != p_) throw std::invalid_argument("Fp: mismatched moduli");
  }

  std::int64_t p_;
  std::int64_t v_;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

/// f(a) = (-1)^a * 2/a for 1 <= a <= p-2, and 0 for a in {0, p-1}.
Fp f_of(std::int64_t a, Prime p);

/// g(a) = -(a+1)/a for 1 <= a <= p-1, and g(0) = -2.
Fp g_of(std::int64_t a, Prime p);

// Scaling operators F_S, G_S, H_S evaluated on the idempotent at v. They read
// the digit of v just above max(S); digits above the leading one are zero.
// H_S evaluates g at that digit minus one, reduced mod p.
Fp scale_f(const AdmissibleSet& s, Vertex v, Prime p);
Fp scale_g(const AdmissibleSet& s, Vertex v, Prime p);
Fp scale_h(const AdmissibleSet& s, Vertex v, Prime p);

}  // namespace tiltz
