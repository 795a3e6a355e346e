#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ils/linear_operator.hpp"
#include "ils/solve_report.hpp"

namespace ils {

struct GmresConfig {
  /// Restart length; std::nullopt runs full GMRES.
  std::optional<std::size_t> restart = 10;
  double tol = 1e-11;
  /// Total inner iterations across all cycles.
  std::size_t maxit = 1000;
  /// Check the true residual after every inner step. When off, the true
  /// residual is only formed at cycle ends and the Givens estimate drives
  /// early cycle termination.
  bool track_true_residual = true;
};

struct GmresResult {
  SolveReport report;
  Vector solution;
  /// |g_{j+1}| after each inner step: the preconditioned residual norm estimate.
  Vector preconditioned_estimates;
  std::size_t cycles = 0;
  bool happy_breakdown = false;
};

/// Arnoldi process with modified Gram-Schmidt on Op = M^{-1} A (or A when no
/// preconditioner is given).
class Arnoldi {
 public:
  Arnoldi(const LinearOperator& a, const LinearOperator* m, std::span<const double> start);

  /// Extends the basis by one vector; returns h_{j+1,j}.
  double step();

  [[nodiscard]] std::size_t size() const noexcept { return basis_.size() - 1; }
  [[nodiscard]] const std::vector<Vector>& basis() const noexcept { return basis_; }
  /// Column j of the Hessenberg matrix (length j + 2).
  [[nodiscard]] const Vector& hessenberg_column(std::size_t j) const { return h_.at(j); }
  [[nodiscard]] double beta() const noexcept { return beta_; }

 private:
  const LinearOperator* a_;
  const LinearOperator* m_;
  std::vector<Vector> basis_;
  std::vector<Vector> h_;
  Vector work_;
  double beta_;
};

/// Left-preconditioned GMRES from the zero initial guess. Convergence is
/// declared on the unpreconditioned relative residual ||rhs - A x|| / ||rhs||.
[[nodiscard]] GmresResult gmres(const LinearOperator& a, const LinearOperator* m, std::span<const double> rhs,
                                const GmresConfig& config = {});

[[nodiscard]] GmresResult gmres_full(const LinearOperator& a, const LinearOperator* m,
                                     std::span<const double> rhs, GmresConfig config = {});

}  // namespace ils
