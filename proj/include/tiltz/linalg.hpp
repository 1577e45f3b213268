#pragma once

// Sparse linear algebra over F_p: row reduction, rank and nullspace.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tiltz {

class Morphism;

/// Sorted (column, value) pairs with values in [1, p).
using SparseVec = std::vector<std::pair<std::size_t, std::int64_t>>;

/// Incremental echelon basis of a row space.
class RowReducer {
public:
  explicit RowReducer(std::int64_t p) : p_(p) {}

  /// Reduce v against the stored rows and keep the remainder if nonzero.
  /// Returns true when v was independent of the rows seen so far.
  bool insert(SparseVec v);
  /// The remainder of v after reduction (empty iff v lies in the span).
  SparseVec reduce(SparseVec v) const;
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Fully reduce so that each pivot column appears in exactly one row.
  void to_reduced();
  /// Rows keyed by pivot column; each row's pivot coefficient is 1.
  const std::map<std::size_t, SparseVec>& rows() const noexcept { return rows_; }

private:
  std::int64_t p_;
  std::map<std::size_t, SparseVec> rows_;
};

/// a + c*b over F_p.
SparseVec axpy(const SparseVec& a, std::int64_t c, const SparseVec& b, std::int64_t p);
std::int64_t inverse_mod(std::int64_t a, std::int64_t p);

/// Basis of {x : A x = 0} where A has the given rows and `ncols` columns.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t ncols,
                                 std::int64_t p);

/// Dimension of the span of the given morphisms (terms as coordinates).
std::size_t rank_of(const std::vector<Morphism>& ms);

}  // namespace tiltz
