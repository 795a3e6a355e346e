#include "ils/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ils/block_operator.hpp"
#include "ils/pbs.hpp"

namespace ils {
namespace {

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu < 1.0))
    throw Error(ErrorCode::DomainError, "mu_max = " + std::to_string(mu) + " is outside [0, 1)");
}

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

ComplexVector to_complex(std::span<const double> re, std::span<const double> im) {
  ComplexVector out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

double complex_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

// ||T v - lambda v|| / ||v|| for the real operator T applied to a complex v.
template <typename Op>
double complex_defect(const Op& t, const ComplexVector& v, Complex lambda) {
  Vector re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  const Vector tre = t(re), tim = t(im);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::norm(Complex(tre[i], tim[i]) - lambda * v[i]);
  return std::sqrt(s) / complex_norm(v);
}

}  // namespace

MuMaxResult mu_max(const IlsProblem& problem, double tol, std::size_t maxit, unsigned seed) {
  const std::size_t n = problem.n();
  MuMaxResult out;
  if (n == 0 || problem.a2().nnz() == 0) {
    out.converged = true;
    return out;
  }
  const CholeskyFactor& l = problem.p_factor();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (double& e : v) e = normal(rng);
  scale(1.0 / norm2(v), v);

  Vector u(problem.q_rows());
  Vector g(n);
  double lambda_prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= maxit; ++k) {
    // w = L^{-1} Pi A2^T A2 Pi^T L^{-T} v
    const Vector t = l.apply_inverse_factor_transpose(v);
    matvec(problem.a2(), t, u);
    matvec_transpose(problem.a2(), u, g);
    Vector w = l.apply_inverse_factor(g);
    const double lambda = dot(v, w);
    out.value = lambda;
    out.iterations = k;
    const double wn = norm2(w);
    if (wn == 0.0 || std::abs(lambda - lambda_prev) <= tol * std::abs(lambda)) {
      out.converged = true;
      break;
    }
    lambda_prev = lambda;
    scale(1.0 / wn, w);
    v = std::move(w);
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

double convergence_interval_upper(double mu) {
  check_mu(mu);
  if (mu == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 + 1.0 / mu;
}

std::pair<double, double> convergence_interval(double mu) { return {0.0, convergence_interval_upper(mu)}; }

double alpha_opt(double mu) {
  check_mu(mu);
  return 2.0 / (1.0 + std::sqrt(1.0 - mu));
}

double rho_opt(double mu) {
  check_mu(mu);
  return mu / (1.0 + std::sqrt(1.0 - mu));
}

SpectralSummary summarize(double mu) {
  return {mu, convergence_interval_upper(mu), alpha_opt(mu), rho_opt(mu)};
}

SpectralSummary analyze(const IlsProblem& problem, double tol, std::size_t maxit) {
  const MuMaxResult r = mu_max(problem, tol, maxit);
  return summarize(r.value);
}

std::pair<std::complex<double>, std::complex<double>> quad_roots(double alpha, double mu) {
  const double b = alpha * mu;
  const double c = (alpha - 1.0) * mu;
  const double disc = b * b - 4.0 * c;
  if (std::abs(disc) <= 1e-14 * (b * b + 1.0)) return {Complex(b / 2.0), Complex(b / 2.0)};
  if (disc < 0.0) {
    const double im = std::sqrt(-disc) / 2.0;
    return {Complex(b / 2.0, im), Complex(b / 2.0, -im)};
  }
  // larger-magnitude root first, the other from the product to avoid cancellation
  const double big = (b + (b >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc)) / 2.0;
  const double small = big != 0.0 ? c / big : 0.0;
  return big >= small ? std::pair{Complex(big), Complex(small)} : std::pair{Complex(small), Complex(big)};
}

double max_root_modulus(double alpha, double mu) {
  const auto [r1, r2] = quad_roots(alpha, mu);
  return std::max(std::abs(r1), std::abs(r2));
}

DenseMatrix symmetrized_pencil(const IlsProblem& problem, std::size_t max_n) {
  const std::size_t n = problem.n();
  if (n > max_n)
    throw Error(ErrorCode::ProblemTooLarge, "dense pencil of order " + std::to_string(n) + " exceeds " +
                                                std::to_string(max_n));
  const CholeskyFactor& l = problem.p_factor();
  DenseMatrix s(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector t = l.apply_inverse_factor_transpose(e);
    const Vector g = matvec_transpose(problem.a2(), matvec(problem.a2(), t));
    const Vector col = l.apply_inverse_factor(g);
    for (std::size_t i = 0; i < n; ++i) s(i, j) = col[i];
    e[j] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
  return s;
}

SymmetricEigen pencil_spectrum(const IlsProblem& problem, std::size_t max_n) {
  SymmetricEigen eig = symmetric_eigen(symmetrized_pencil(problem, max_n));
  const std::size_t n = problem.n();
  Vector w(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) w[i] = eig.vectors(i, k);
    Vector u = problem.p_factor().apply_inverse_factor_transpose(w);
    const double un = norm2(u);
    for (std::size_t i = 0; i < n; ++i) eig.vectors(i, k) = u[i] / un;
  }
  return eig;
}

double predicted_rho(std::span<const double> mu_values, double alpha) {
  double rho = 0.0;
  for (double mu : mu_values) rho = std::max(rho, max_root_modulus(alpha, std::max(mu, 0.0)));
  return rho;
}

double predicted_rho(const IlsProblem& problem, double alpha) {
  if (problem.a2().nnz() == 0) return predicted_rho(std::span<const double>{}, alpha);
  const SymmetricEigen eig = symmetric_eigen(symmetrized_pencil(problem));
  return predicted_rho(eig.values, alpha);
}

double EigenpairReport::max_defect(EigenpairCase which) const {
  double m = 0.0;
  for (const auto& c : checks)
    if (c.which == which && !c.skipped) m = std::max(m, c.defect);
  return m;
}

bool EigenpairReport::has(EigenpairCase which) const {
  return std::any_of(checks.begin(), checks.end(),
                     [&](const EigenpairCheck& c) { return c.which == which && !c.skipped; });
}

DenseMatrix null_space(const SparseMatrix& a, double rel_tol) {
  const SymmetricEigen eig = symmetric_eigen(to_dense(gram(a)));
  const std::size_t n = a.cols();
  const double top = n == 0 ? 0.0 : std::max(eig.values.back(), 0.0);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (eig.values[k] <= rel_tol * top) keep.push_back(k);
  DenseMatrix out(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) out(i, c) = eig.vectors(i, keep[c]);
  return out;
}

EigenpairReport verify_eigenpair_forms(const IlsProblem& problem, double alpha, unsigned seed) {
  const std::size_t n = problem.n(), q = problem.q_rows();
  const BlockOperator op(problem, BlockKind::Augmented6);
  if (op.dim() > 200)
    throw Error(ErrorCode::ProblemTooLarge, "eigenpair verification is limited to dim <= 200");
  auto precond_op = [&](std::span<const double> v) { return apply_pbs(problem, alpha, op(v)); };

  EigenpairReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto random_vector = [&](std::size_t len) {
    Vector r(len);
    for (double& e : r) e = normal(rng);
    return r;
  };

  // (i) lambda = 1 - r for each nonzero root r of the quadratic at each mu > 0
  const SymmetricEigen spec = pencil_spectrum(problem);
  const double mu_floor = 1e-12 * std::max(1.0, spec.values.empty() ? 0.0 : spec.values.back());
  for (std::size_t k = 0; k < n; ++k) {
    const double mu = spec.values[k];
    if (mu <= mu_floor) continue;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = spec.vectors(i, k);
    const Vector a2x = matvec(problem.a2(), x);
    auto [r1, r2] = quad_roots(alpha, mu);
    std::vector<Complex> roots{r1};
    if (std::abs(r1 - r2) > 1e-14) roots.push_back(r2);
    for (const Complex r : roots) {
      if (std::abs(r) <= 1e-12) continue;
      const Complex lambda = 1.0 - r;
      // y from (alpha - 1 - alpha r) A2 x = r y
      const Complex coef = (alpha - 1.0 - alpha * r) / r;
      ComplexVector y(q);
      for (std::size_t i = 0; i < q; ++i) y[i] = coef * a2x[i];
      Vector yre(q), yim(q);
      for (std::size_t i = 0; i < q; ++i) {
        yre[i] = y[i].real();
        yim[i] = y[i].imag();
      }
      const Vector zre = matvec_transpose(problem.a2(), yre), zim = matvec_transpose(problem.a2(), yim);
      const Vector pre = problem.p_factor().solve(zre), pim = problem.p_factor().solve(zim);
      ComplexVector v;
      v.reserve(op.dim());
      const Complex inv = 1.0 / (lambda - 1.0);
      for (std::size_t i = 0; i < n; ++i) v.push_back(inv * Complex(pre[i], pim[i]));
      v.insert(v.end(), y.begin(), y.end());
      const ComplexVector z = to_complex(zre, zim);
      v.insert(v.end(), z.begin(), z.end());
      report.checks.push_back({EigenpairCase::GeneralLambda, lambda, complex_defect(precond_op, v, lambda), false,
                               "mu = " + std::to_string(mu)});
    }
  }

  auto unit_defect = [&](const Vector& x, const Vector& y) {
    const Vector v = concat({x, y, Vector(n, 0.0)});
    Vector r = precond_op(v);
    axpy(-1.0, v, r);
    return norm2(r) / norm2(v);
  };

  if (std::abs(alpha - 1.0) <= 1e-15) {
    // (ii) every (x; y; 0) is an eigenvector for lambda = 1
    for (int trial = 0; trial < 3; ++trial) {
      const Vector x = random_vector(n), y = random_vector(q);
      report.checks.push_back({EigenpairCase::AlphaOne, 1.0, unit_defect(x, y), false, "random (x; y; 0)"});
    }
  } else {
    // (iii) x in N(A2)
    const DenseMatrix kernel = null_space(problem.a2());
    if (kernel.cols() == 0) {
      report.checks.push_back({EigenpairCase::NullSpace, 1.0, 0.0, true, "NullSpaceEmpty: A2 has full column rank"});
    } else {
      for (std::size_t c = 0; c < kernel.cols(); ++c) {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = kernel(i, c);
        const Vector y = random_vector(q);
        report.checks.push_back({EigenpairCase::NullSpace, 1.0, unit_defect(x, y), false,
                                 "kernel vector " + std::to_string(c)});
      }
    }
  }
  return report;
}

}  // namespace ils
