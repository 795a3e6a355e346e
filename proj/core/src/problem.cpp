#include "ils/problem.hpp"

#include <string>

namespace ils {

IlsProblem build_problem(SparseMatrix a1, SparseMatrix a2, Vector b1, Vector b2, const CholeskyOptions& options) {
  const std::size_t n = a1.cols();
  if (a2.cols() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "A1 has " + std::to_string(n) + " columns but A2 has " + std::to_string(a2.cols()));
  if (b1.size() != a1.rows()) throw Error(ErrorCode::DimensionMismatch, "len(b1) != rows(A1)");
  if (b2.size() != a2.rows()) throw Error(ErrorCode::DimensionMismatch, "len(b2) != rows(A2)");
  if (a1.rows() < n)
    throw Error(ErrorCode::RankDeficientA1, "A1 is " + std::to_string(a1.rows()) + "x" + std::to_string(n) +
                                                "; full column rank needs p >= n");
  if (!all_finite(a1.values()) || !all_finite(a2.values()) || !all_finite(b1) || !all_finite(b2))
    throw Error(ErrorCode::InvalidArgument, "non-finite problem data");

  IlsProblem pr;
  pr.p_ = gram(a1);
  try {
    pr.p_factor_ = cholesky_factor(pr.p_, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite)
      throw Error(ErrorCode::RankDeficientA1, std::string("A1^T A1 is not positive definite (") + e.what() + ")");
    throw;
  }
  pr.b1_hat_ = matvec_transpose(a1, b1);
  pr.a1_ = std::move(a1);
  pr.a2_ = std::move(a2);
  pr.b1_ = std::move(b1);
  pr.b2_ = std::move(b2);
  return pr;
}

SparseMatrix hessian(const IlsProblem& problem) { return add(problem.p(), gram(problem.a2()), 1.0, -1.0); }

bool hessian_is_spd(const IlsProblem& problem) {
  try {
    (void)cholesky_factor(hessian(problem));
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) return false;
    throw;
  }
}

Vector reference_solution(const IlsProblem& problem) {
  CholeskyFactor h;
  try {
    h = cholesky_factor(hessian(problem));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite)
      throw Error(ErrorCode::HessianNotSPD, std::string("A1^T A1 - A2^T A2 is not SPD (") + e.what() + ")");
    throw;
  }
  Vector rhs = problem.b1_hat();
  axpy(-1.0, matvec_transpose(problem.a2(), problem.b2()), rhs);
  return h.solve(rhs);
}

}  // namespace ils
