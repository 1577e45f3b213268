#pragma once

// Shared helpers for the tests: a seeded generator and small oracles that do
// not go through the library code they check.

#include <cstdint>
#include <random>
#include <vector>

#include "tiltz/algebra.hpp"

namespace tiltz::test {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return range(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

private:
  std::mt19937_64 rng_;
};

// Little-endian digits by repeated division.
inline std::vector<std::int64_t> digits_oracle(std::int64_t v, std::int64_t p) {
  std::vector<std::int64_t> d;
  for (; v > 0; v /= p) d.push_back(v % p);
  return d;
}

// Horner evaluation of a big-endian digit string in 128 bits.
inline __int128 value_oracle(const std::vector<std::int64_t>& big_endian, std::int64_t p) {
  __int128 x = 0;
  for (auto d : big_endian) x = x * p + d;
  return x;
}

inline std::int64_t digit_oracle(std::int64_t v, int i, std::int64_t p) {
  auto d = digits_oracle(v, p);
  return i < static_cast<int>(d.size()) ? d[static_cast<std::size_t>(i)] : 0;
}

// Admissibility read element by element: a stretch may not start on a zero
// digit, and the digit just above a stretch may not be `blocked`.
inline bool admissible_oracle(const std::vector<int>& s, std::int64_t v, std::int64_t p,
                              std::int64_t blocked) {
  auto in = [&](int k) {
    for (int x : s)
      if (x == k) return true;
    return false;
  };
  for (int k : s) {
    if (!in(k - 1) && digit_oracle(v, k, p) == 0) return false;
    if (!in(k + 1) && digit_oracle(v, k + 1, p) == blocked) return false;
  }
  return true;
}

inline std::vector<int> bits(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

// A random walk of `len` generator steps from v, as a RawWord.
inline RawWord random_walk(Gen& g, Prime p, Vertex v, int len, Vertex cap) {
  RawWord w;
  w.source = v;
  Vertex at = v;
  for (int s = 0; s < len; ++s) {
    std::vector<Generator> ns;
    for (const auto& n : neighbors(at, p))
      if (n.target <= cap) ns.push_back(n);
    if (ns.empty()) break;
    const auto& n = g.pick(ns);
    w.letters.push_back({n.kind, AdmissibleSet(n.stretch)});
    at = n.target;
  }
  return w;
}

}  // namespace tiltz::test
