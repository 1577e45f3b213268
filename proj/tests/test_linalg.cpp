#include "doctest.h"
#include "support.hpp"
#include "tiltz/linalg.hpp"

using namespace tiltz;
using tiltz::test::Gen;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

std::int64_t pw(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  for (a %= p; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

// Dense Gaussian elimination, inverses by Fermat.
std::size_t dense_rank(Dense a, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t n = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const std::int64_t inv = pw(a[r][c], p - 2, p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != r && a[i][c]) {
        const std::int64_t f = a[i][c];
        for (std::size_t k = 0; k < n; ++k) a[i][k] = ((a[i][k] - f * a[r][k]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

SparseVec sparse(const std::vector<std::int64_t>& row) {
  SparseVec v;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i]) v.emplace_back(i, row[i]);
  return v;
}

std::int64_t dot(const std::vector<std::int64_t>& row, const SparseVec& x, std::int64_t p) {
  std::int64_t s = 0;
  for (const auto& [c, k] : x) s = (s + row[c] * k) % p;
  return s;
}

}  // namespace

TEST_CASE("inverse_mod and axpy") {
  for (std::int64_t p : {2, 3, 5, 7, 11, 1000003})
    for (std::int64_t a = 1; a < std::min<std::int64_t>(p, 200); ++a)
      CHECK(a * inverse_mod(a, p) % p == 1);
  CHECK(axpy({{0, 1}, {2, 2}}, 1, {{0, 2}, {1, 1}}, 3) == SparseVec{{1, 1}, {2, 2}});
  CHECK(axpy({{0, 1}}, 2, {}, 5) == SparseVec{{0, 1}});
}

TEST_CASE("rank and nullspace agree with dense elimination") {
  Gen g(7);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = static_cast<std::size_t>(g.range(0, 9));
      const std::size_t cols = static_cast<std::size_t>(g.range(1, 10));
      Dense a(rows, std::vector<std::int64_t>(cols));
      for (auto& r : a)
        for (auto& x : r) x = g.range(0, 3) == 0 ? g.range(1, p - 1) : 0;
      std::vector<SparseVec> sp;
      RowReducer rr(p);
      for (const auto& r : a) {
        sp.push_back(sparse(r));
        rr.insert(sparse(r));
      }
      const std::size_t rk = dense_rank(a, p);
      REQUIRE(rr.rank() == rk);
      auto ker = nullspace(sp, cols, p);
      REQUIRE(ker.size() == cols - rk);
      for (const auto& x : ker)
        for (const auto& r : a) REQUIRE(dot(r, x, p) == 0);
      RowReducer kr(p);
      for (const auto& x : ker) REQUIRE(kr.insert(x));
      // A vector is in the row space iff reduce() leaves nothing.
      for (const auto& r : sp) CHECK(rr.reduce(r).empty());
    }
  }
}

TEST_CASE("reduced echelon form") {
  RowReducer rr(5);
  rr.insert({{0, 2}, {1, 3}});
  rr.insert({{1, 1}, {2, 4}});
  CHECK_FALSE(rr.insert({{0, 1}, {2, 4}}));  // 3 row0 + row1
  CHECK(rr.insert({{0, 1}, {1, 2}, {2, 3}}));
  rr.to_reduced();
  for (const auto& [pc, row] : rr.rows()) {
    CHECK(row.front() == std::make_pair(pc, std::int64_t{1}));
    for (const auto& [other, r2] : rr.rows())
      if (other != pc)
        for (const auto& [c, k] : r2) CHECK(c != pc);
  }
  CHECK(nullspace({}, 3, 5).size() == 3);
}
