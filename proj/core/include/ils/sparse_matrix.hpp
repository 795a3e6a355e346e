#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ils/vector.hpp"

namespace ils {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class DenseMatrix;

/// Compressed sparse row matrix in canonical form: column indices strictly
/// increasing within each row, no duplicates and no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Zero matrix of the given shape.
  SparseMatrix(std::size_t nrows, std::size_t ncols);
  /// Adopts raw CSR arrays; throws unless they already satisfy the canonical invariants.
  SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_ptr,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  [[nodiscard]] std::size_t rows() const noexcept { return nrows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return ncols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }

  [[nodiscard]] std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Entry lookup by binary search; zero when not stored.
  [[nodiscard]] double at(std::size_t row, std::size_t col) const;

  [[nodiscard]] static SparseMatrix identity(std::size_t n, double diagonal = 1.0);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Builds canonical CSR; duplicate entries are summed and exact zeros dropped.
[[nodiscard]] SparseMatrix csr_from_triplets(std::span<const Triplet> triplets, std::size_t nrows,
                                             std::size_t ncols);
[[nodiscard]] std::vector<Triplet> to_triplets(const SparseMatrix& a);

[[nodiscard]] SparseMatrix transpose(const SparseMatrix& a);

/// y = A x
[[nodiscard]] Vector matvec(const SparseMatrix& a, std::span<const double> x);
void matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
/// y = A^T x, without forming A^T.
[[nodiscard]] Vector matvec_transpose(const SparseMatrix& a, std::span<const double> x);
void matvec_transpose(const SparseMatrix& a, std::span<const double> x, std::span<double> y);

/// C = alpha * A + beta * B (same shape), canonical.
[[nodiscard]] SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0,
                               double beta = 1.0);
/// C = A * B
[[nodiscard]] SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// A^T A, bitwise symmetric.
[[nodiscard]] SparseMatrix gram(const SparseMatrix& a);

[[nodiscard]] bool is_exactly_symmetric(const SparseMatrix& a);
[[nodiscard]] DenseMatrix to_dense(const SparseMatrix& a);

}  // namespace ils
