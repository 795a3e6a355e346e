#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ils/dense_matrix.hpp"
#include "ils/sparse_matrix.hpp"

namespace ils {

struct CholeskyOptions {
  /// Matrices of order up to this use dense storage; larger ones use the sparse up-looking path.
  std::size_t dense_threshold = 2048;
  /// A pivot at or below pivot_tolerance * max|diag| rejects the matrix as not SPD.
  double pivot_tolerance = 1e-13;
};

/// Lower-triangular factor L with Pi * S * Pi^T = L * L^T.
///
/// The permutation is the identity on the dense path and reverse Cuthill-McKee
/// on the sparse path. Immutable once built.
class CholeskyFactor {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool is_dense() const noexcept { return dense_; }
  /// perm[k] is the original index placed at position k.
  [[nodiscard]] std::span<const std::size_t> permutation() const noexcept { return perm_; }
  [[nodiscard]] std::size_t factor_nnz() const noexcept;

  /// z = S^{-1} w
  [[nodiscard]] Vector solve(std::span<const double> w) const;
  void solve_in_place(std::span<double> w) const;

  /// y = L^{-1} Pi w
  [[nodiscard]] Vector apply_inverse_factor(std::span<const double> w) const;
  /// w = Pi^T L^{-T} y
  [[nodiscard]] Vector apply_inverse_factor_transpose(std::span<const double> y) const;

  /// L as a dense matrix in permuted ordering (test scale).
  [[nodiscard]] DenseMatrix lower_dense() const;

 private:
  friend CholeskyFactor cholesky_factor(const SparseMatrix& s, const CholeskyOptions& options);

  void lower_solve(std::span<double> y) const;
  void upper_solve(std::span<double> y) const;

  std::size_t n_ = 0;
  bool dense_ = true;
  std::vector<std::size_t> perm_;
  // dense path: row-major n x n lower triangle
  std::vector<double> dense_l_;
  // sparse path: compressed columns, diagonal stored first in each column
  std::vector<std::size_t> col_ptr_;
  std::vector<std::size_t> row_idx_;
  std::vector<double> values_;
};

/// Factors a symmetric matrix stored with both triangles. Throws
/// ErrorCode::NotPositiveDefinite on a non-positive (relative) pivot.
[[nodiscard]] CholeskyFactor cholesky_factor(const SparseMatrix& s, const CholeskyOptions& options = {});

[[nodiscard]] Vector cholesky_solve(const CholeskyFactor& factor, std::span<const double> w);

/// Reverse Cuthill-McKee ordering of a structurally symmetric matrix.
[[nodiscard]] std::vector<std::size_t> reverse_cuthill_mckee(const SparseMatrix& s);

}  // namespace ils
