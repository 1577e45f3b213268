#include "tiltz/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "tiltz/algebra.hpp"

namespace tiltz {

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::domain_error("inverse of zero");
  std::int64_t r = 1, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

SparseVec axpy(const SparseVec& a, std::int64_t c, const SparseVec& b, std::int64_t p) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second % p);
      ++j;
    } else {
      std::int64_t v = (a[i].second + c * b[j].second) % p;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec RowReducer::reduce(SparseVec v) const {
  std::size_t start = 0;
  while (start < v.size()) {
    auto it = rows_.find(v[start].first);
    if (it == rows_.end()) {
      ++start;
      continue;
    }
    // Entries before `start` are non-pivot columns and stay untouched.
    SparseVec head(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
    SparseVec tail(v.begin() + static_cast<std::ptrdiff_t>(start), v.end());
    tail = axpy(tail, p_ - tail.front().second, it->second, p_);
    head.insert(head.end(), tail.begin(), tail.end());
    v = std::move(head);
  }
  return v;
}

bool RowReducer::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  std::int64_t inv = inverse_mod(v.front().second, p_);
  for (auto& [c, x] : v) x = x * inv % p_;
  rows_.emplace(v.front().first, std::move(v));
  return true;
}

void RowReducer::to_reduced() {
  // Eliminate pivot columns from the rows above, largest pivot first.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    const std::size_t col = it->first;
    for (auto& [pc, row] : rows_) {
      if (pc >= col) break;
      for (const auto& [c, x] : row) {
        if (c < col) continue;
        if (c == col) row = axpy(row, p_ - x, it->second, p_);
        break;
      }
    }
  }
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t ncols,
                                 std::int64_t p) {
  RowReducer r(p);
  for (const auto& row : rows) r.insert(row);
  r.to_reduced();
  std::vector<bool> pivot(ncols, false);
  for (const auto& [c, row] : r.rows()) {
    if (c >= ncols) throw std::out_of_range("nullspace: column out of range");
    pivot[c] = true;
  }
  // Column f of the reduced matrix, read off row by row.
  std::vector<SparseVec> columns(ncols);
  for (const auto& [pc, row] : r.rows())
    for (const auto& [c, x] : row)
      if (c != pc) columns[c].emplace_back(pc, x);
  std::vector<SparseVec> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot[f]) continue;
    SparseVec v;
    for (const auto& [pc, x] : columns[f]) v.emplace_back(pc, (p - x) % p);
    v.emplace_back(f, 1);
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank_of(const std::vector<Morphism>& ms) {
  if (ms.empty()) return 0;
  std::map<BasisWord, std::size_t> index;
  for (const auto& m : ms)
    for (const auto& [w, c] : m.terms()) index.emplace(w, index.size());
  RowReducer r(ms.front().prime().value());
  for (const auto& m : ms) {
    SparseVec v;
    for (const auto& [w, c] : m.terms()) v.emplace_back(index.at(w), c);
    std::sort(v.begin(), v.end());
    r.insert(std::move(v));
  }
  return r.rank();
}

}  // namespace tiltz
