#pragma once

#include <cstddef>

#include "ils/block_operator.hpp"
#include "ils/solve_report.hpp"

namespace ils {

/// Application of M_alpha^{-1} where
///
///   M_alpha = [ P          0     0 ]
///             [ alpha*A2   I     0 ]
///             [ 0        -A2^T   I ]
///
/// Acts on vectors of length 2n+q partitioned (n; q; n).
class PbsPreconditioner final : public LinearOperator {
 public:
  PbsPreconditioner(const IlsProblem& problem, double alpha);

  [[nodiscard]] std::size_t dim() const noexcept override;
  void apply(std::span<const double> w, std::span<double> z) const override;

  [[nodiscard]] double alpha() const noexcept { return alpha_; }

 private:
  const IlsProblem* problem_;
  double alpha_;
};

/// z = M_alpha^{-1} w. alpha = 0 is accepted here (the second block
/// decouples); the preconditioner class itself requires alpha > 0.
[[nodiscard]] Vector apply_pbs(const IlsProblem& problem, double alpha, std::span<const double> w);

enum class BsKind { BS1, BS2, BS3 };

/// Block-splitting preconditioners for the XinMengB formulation, acting on
/// vectors of length p+n+q partitioned (p; n; q):
///   BS1 = diag(I, P, I),  BS2 = [I 0 0; 0 P A2^T; 0 0 I],  BS3 = [I A1 0; 0 P 0; 0 0 I].
class BsPreconditioner final : public LinearOperator {
 public:
  BsPreconditioner(const IlsProblem& problem, BsKind kind);

  [[nodiscard]] std::size_t dim() const noexcept override;
  void apply(std::span<const double> w, std::span<double> z) const override;

  [[nodiscard]] BsKind kind() const noexcept { return kind_; }

 private:
  const IlsProblem* problem_;
  BsKind kind_;
};

struct PbsIterateOptions {
  double tol = 1e-11;
  std::size_t maxit = 1000;
  /// Rel above this aborts with SolveStatus::Diverged.
  double divergence_threshold = 1e8;
};

/// Stationary PBS iteration on the Augmented6 system from the zero initial
/// guess, stopping on the true relative residual. The solution is the full
/// stacked iterate (x; delta2; A1^T delta1).
[[nodiscard]] SolveResult pbs_iterate(const IlsProblem& problem, double alpha, const PbsIterateOptions& options = {});

/// One componentwise sweep from v = (x; delta2; delta1_hat):
///   x'      = P^{-1} (A1^T b1 - delta1_hat)
///   delta2' = -alpha A2 x' + (alpha - 1) A2 x + b2
///   delta1_hat' = A2^T delta2'
[[nodiscard]] Vector pbs_componentwise_step(const IlsProblem& problem, double alpha, std::span<const double> v);

/// v + M_alpha^{-1} (rhs - A v), the splitting form of one sweep.
[[nodiscard]] Vector pbs_splitting_step(const BlockOperator& op, double alpha, std::span<const double> v);

}  // namespace ils
