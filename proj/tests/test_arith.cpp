#include "doctest.h"
#include "support.hpp"
#include "tiltz/admissible.hpp"
#include "tiltz/padic.hpp"

using namespace tiltz;

namespace {

// Inverse by search, independent of the library's exponentiation.
std::int64_t inv_search(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  for (std::int64_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return -1;
}

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

}  // namespace

TEST_CASE("Prime rejects composites") {
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(9), std::invalid_argument);
  CHECK(Prime(2).value() == 2);
  CHECK(Prime(1000003).value() == 1000003);
}

TEST_CASE("Fp field axioms, exhaustive for p <= 11") {
  for (std::int64_t p0 : {2, 3, 5, 7, 11}) {
    Prime p(p0);
    for (std::int64_t a = 0; a < p0; ++a) {
      Fp x(a, p);
      CHECK((x + Fp(0, p)) == x);
      CHECK((x * Fp(1, p)) == x);
      CHECK((x + (-x)).is_zero());
      if (a != 0) CHECK((x * x.inverse()) == Fp(1, p));
      for (std::int64_t b = 0; b < p0; ++b) {
        Fp y(b, p);
        CHECK((x + y) == (y + x));
        CHECK((x * y) == (y * x));
        CHECK((x - y).value() == mod(a - b, p0));
        for (std::int64_t c = 0; c < p0; ++c) {
          Fp z(c, p);
          CHECK(((x + y) + z) == (x + (y + z)));
          CHECK(((x * y) * z) == (x * (y * z)));
          CHECK((x * (y + z)) == (x * y + x * z));
        }
      }
    }
    CHECK_THROWS_AS(Fp(0, p).inverse(), std::domain_error);
  }
  CHECK(Fp(-1, Prime(7)).value() == 6);
  CHECK_THROWS_AS(Fp(1, Prime(3)) + Fp(1, Prime(5)), std::invalid_argument);
}

TEST_CASE("f and g: printed values") {
  Prime p(7);
  CHECK(f_of(3, p).value() == 4);
  CHECK(g_of(3, p).value() == 1);
  CHECK(g_of(2, p).value() == 2);
  CHECK(f_of(6, p).value() == 0);
  CHECK(g_of(0, p).value() == 5);
  CHECK(f_of(2, Prime(5)).value() == 1);
}

TEST_CASE("f and g against the formulas, and the identities") {
  for (std::int64_t p0 : {2, 3, 5, 7, 11, 13}) {
    Prime p(p0);
    CHECK(f_of(p0 - 1, p).is_zero());
    CHECK(g_of(p0 - 1, p).is_zero());
    CHECK(f_of(0, p).is_zero());
    CHECK(g_of(0, p).value() == mod(-2, p0));
    for (std::int64_t a = 1; a < p0; ++a) {
      const std::int64_t inv = inv_search(a, p0);
      CHECK(g_of(a, p).value() == mod(-(a + 1) * inv, p0));
      if (a <= p0 - 2) {
        const std::int64_t sign = a % 2 == 0 ? 1 : -1;
        CHECK(f_of(a, p).value() == mod(sign * 2 * inv, p0));
        CHECK((g_of(a, p) * g_of(p0 - a - 1, p)) == Fp(1, p));
      }
    }
  }
}

TEST_CASE("scaling operators read the digit above max S") {
  Prime p(7);
  const Vertex v = PadicDigits::from_big_endian({3, 1, 6, 5, 0, 5, 6}, p).value();
  auto s = AdmissibleSet::parse("{5,4,3|0}");
  CHECK(scale_f(s, v, p).value() == 4);
  CHECK(scale_g(s, v, p).value() == 1);
  CHECK(scale_h(s, v, p).value() == 2);
  // p = 5, v = 9 = [1,4]: a_1 = 1, g(1) = -2.
  CHECK(scale_g(AdmissibleSet::singleton(0), 9, Prime(5)).value() == 3);
  // a_{max S + 1} = p - 1 gives zero: 43 = [6,1]_7.
  CHECK(scale_f(AdmissibleSet::singleton(0), 43, Prime(7)).is_zero());
  CHECK(scale_g(AdmissibleSet::singleton(0), 43, Prime(7)).is_zero());
  // H at digit zero wraps to g(p - 1) = 0; above the leading digit too.
  CHECK(scale_h(AdmissibleSet::singleton(5), 17, Prime(3)).is_zero());
}
