#pragma once

#include <cstddef>

#include "ils/cholesky.hpp"
#include "ils/sparse_matrix.hpp"

namespace ils {

/// Partitioned indefinite least squares problem
///
///   min_x (b - A x)^T J (b - A x),  A = [A1; A2],  b = [b1; b2],  J = diag(I_p, -I_q).
///
/// The Gram matrix P = A1^T A1 and its Cholesky factor are built once at
/// construction, which doubles as the full-column-rank check on A1.
class IlsProblem {
 public:
  [[nodiscard]] const SparseMatrix& a1() const noexcept { return a1_; }
  [[nodiscard]] const SparseMatrix& a2() const noexcept { return a2_; }
  [[nodiscard]] const Vector& b1() const noexcept { return b1_; }
  [[nodiscard]] const Vector& b2() const noexcept { return b2_; }
  [[nodiscard]] const SparseMatrix& p() const noexcept { return p_; }
  [[nodiscard]] const CholeskyFactor& p_factor() const noexcept { return p_factor_; }

  [[nodiscard]] std::size_t p_rows() const noexcept { return a1_.rows(); }
  [[nodiscard]] std::size_t q_rows() const noexcept { return a2_.rows(); }
  [[nodiscard]] std::size_t n() const noexcept { return a1_.cols(); }
  [[nodiscard]] std::size_t m() const noexcept { return p_rows() + q_rows(); }

  /// A1^T b1
  [[nodiscard]] const Vector& b1_hat() const noexcept { return b1_hat_; }

 private:
  friend IlsProblem build_problem(SparseMatrix, SparseMatrix, Vector, Vector, const CholeskyOptions&);

  SparseMatrix a1_;
  SparseMatrix a2_;
  Vector b1_;
  Vector b2_;
  SparseMatrix p_;
  CholeskyFactor p_factor_;
  Vector b1_hat_;
};

/// Validates dimensions (p >= n), forms P and factors it.
/// Throws DimensionMismatch or RankDeficientA1.
[[nodiscard]] IlsProblem build_problem(SparseMatrix a1, SparseMatrix a2, Vector b1, Vector b2,
                                       const CholeskyOptions& options = {});

/// H = A^T J A = A1^T A1 - A2^T A2
[[nodiscard]] SparseMatrix hessian(const IlsProblem& problem);
[[nodiscard]] bool hessian_is_spd(const IlsProblem& problem);

/// Solution of H x = A1^T b1 - A2^T b2. Throws HessianNotSPD.
[[nodiscard]] Vector reference_solution(const IlsProblem& problem);

}  // namespace ils
