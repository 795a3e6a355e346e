#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ils/problem.hpp"
#include "ils/symmetric_eigen.hpp"

namespace ils {

struct SpectralSummary {
  double mu_max = 0.0;
  /// Convergence interval is (0, alpha_upper); +inf when mu_max = 0.
  double alpha_upper = std::numeric_limits<double>::infinity();
  double alpha_opt = 1.0;
  double rho_opt = 0.0;
};

struct MuMaxResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of Q = P^{-1} A2^T A2 by power iteration on the
/// symmetric similar operator L^{-1} A2^T A2 L^{-T}. The start vector is
/// seeded, so results are deterministic. When maxit is exhausted the best
/// estimate is returned with converged = false.
[[nodiscard]] MuMaxResult mu_max(const IlsProblem& problem, double tol = 1e-8, std::size_t maxit = 5000,
                                 unsigned seed = 2024);

/// Upper end of (0, 1 + 1/mu_max). Throws DomainError outside [0, 1).
[[nodiscard]] double convergence_interval_upper(double mu_max);
[[nodiscard]] std::pair<double, double> convergence_interval(double mu_max);
/// 2 / (1 + sqrt(1 - mu_max))
[[nodiscard]] double alpha_opt(double mu_max);
/// mu_max / (1 + sqrt(1 - mu_max))
[[nodiscard]] double rho_opt(double mu_max);
[[nodiscard]] SpectralSummary summarize(double mu_max);
[[nodiscard]] SpectralSummary analyze(const IlsProblem& problem, double tol = 1e-8, std::size_t maxit = 5000);

/// Both roots of lambda^2 - alpha mu lambda + (alpha - 1) mu = 0, larger
/// real part first. A discriminant within 1e-14 (alpha^2 mu^2 + 1) of zero is
/// treated as a double root.
[[nodiscard]] std::pair<std::complex<double>, std::complex<double>> quad_roots(double alpha, double mu);
[[nodiscard]] double max_root_modulus(double alpha, double mu);

/// Dense S = L^{-1} A2^T A2 L^{-T}. Refuses n > max_n.
[[nodiscard]] DenseMatrix symmetrized_pencil(const IlsProblem& problem, std::size_t max_n = 1024);
/// All eigenvalues of Q with eigenvectors mapped back: column k is u with A2^T A2 u = mu_k P u.
[[nodiscard]] SymmetricEigen pencil_spectrum(const IlsProblem& problem, std::size_t max_n = 1024);

/// Spectral radius of the iteration matrix I - M_alpha^{-1} A predicted from
/// the spectrum of Q. The q + structural zero eigenvalues never set the max.
[[nodiscard]] double predicted_rho(const IlsProblem& problem, double alpha);
[[nodiscard]] double predicted_rho(std::span<const double> mu_values, double alpha);

enum class EigenpairCase { GeneralLambda, AlphaOne, NullSpace };

struct EigenpairCheck {
  EigenpairCase which;
  std::complex<double> lambda;
  double defect = 0.0;
  bool skipped = false;
  std::string note;
};

struct EigenpairReport {
  std::vector<EigenpairCheck> checks;
  [[nodiscard]] double max_defect(EigenpairCase which) const;
  [[nodiscard]] bool has(EigenpairCase which) const;
};

/// Checks the closed-form eigenvectors of the preconditioned matrix
/// M_alpha^{-1} A:
///  - lambda != 1: v = ((lambda - 1)^{-1} P^{-1} A2^T y; y; A2^T y)
///  - alpha = 1, lambda = 1: v = (x; y; 0) for arbitrary x, y
///  - alpha != 1, lambda = 1: v = (x; y; 0) with x in N(A2)
/// Defects are ||M^{-1} A v - lambda v|| / ||v||. The null-space case is
/// reported as skipped when A2 has full column rank. Test scale: 2n+q <= 200.
[[nodiscard]] EigenpairReport verify_eigenpair_forms(const IlsProblem& problem, double alpha, unsigned seed = 7);

/// Orthonormal basis of N(A) from the eigen-decomposition of A^T A.
[[nodiscard]] DenseMatrix null_space(const SparseMatrix& a, double rel_tol = 1e-10);

}  // namespace ils
