#include "ils/pbs.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace ils {

Vector apply_pbs(const IlsProblem& problem, double alpha, std::span<const double> w) {
  const std::size_t n = problem.n(), q = problem.q_rows();
  if (w.size() != 2 * n + q)
    throw Error(ErrorCode::DimensionMismatch, "apply_pbs expects length 2n+q = " + std::to_string(2 * n + q));
  Vector z(w.begin(), w.end());
  std::span<double> z1(z.data(), n), z2(z.data() + n, q), z3(z.data() + n + q, n);
  problem.p_factor().solve_in_place(z1);
  axpy(-alpha, matvec(problem.a2(), z1), z2);
  axpy(1.0, matvec_transpose(problem.a2(), z2), z3);
  return z;
}

PbsPreconditioner::PbsPreconditioner(const IlsProblem& problem, double alpha) : problem_(&problem), alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::DomainError, "PBS parameter must be positive, got " + std::to_string(alpha));
}

std::size_t PbsPreconditioner::dim() const noexcept { return 2 * problem_->n() + problem_->q_rows(); }

void PbsPreconditioner::apply(std::span<const double> w, std::span<double> z) const {
  if (z.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "PbsPreconditioner::apply");
  const Vector r = apply_pbs(*problem_, alpha_, w);
  std::copy(r.begin(), r.end(), z.begin());
}

BsPreconditioner::BsPreconditioner(const IlsProblem& problem, BsKind kind) : problem_(&problem), kind_(kind) {}

std::size_t BsPreconditioner::dim() const noexcept {
  return problem_->p_rows() + problem_->n() + problem_->q_rows();
}

void BsPreconditioner::apply(std::span<const double> w, std::span<double> z) const {
  const IlsProblem& pr = *problem_;
  const std::size_t p = pr.p_rows(), n = pr.n(), q = pr.q_rows();
  if (w.size() != dim() || z.size() != dim())
    throw Error(ErrorCode::DimensionMismatch, "BsPreconditioner expects length p+n+q = " + std::to_string(dim()));
  std::copy(w.begin(), w.end(), z.begin());
  auto z1 = z.subspan(0, p), z2 = z.subspan(p, n), z3 = z.subspan(p + n, q);
  switch (kind_) {
    case BsKind::BS1:
      pr.p_factor().solve_in_place(z2);
      break;
    case BsKind::BS2:
      axpy(-1.0, matvec_transpose(pr.a2(), z3), z2);
      pr.p_factor().solve_in_place(z2);
      break;
    case BsKind::BS3:
      pr.p_factor().solve_in_place(z2);
      axpy(-1.0, matvec(pr.a1(), z2), z1);
      break;
  }
}

Vector pbs_componentwise_step(const IlsProblem& problem, double alpha, std::span<const double> v) {
  const std::size_t n = problem.n(), q = problem.q_rows();
  if (v.size() != 2 * n + q) throw Error(ErrorCode::DimensionMismatch, "pbs_componentwise_step");
  auto x = v.subspan(0, n), dh = v.subspan(n + q, n);

  Vector x_next = problem.b1_hat();
  axpy(-1.0, dh, x_next);
  problem.p_factor().solve_in_place(x_next);

  Vector d2_next = problem.b2();
  axpy(-alpha, matvec(problem.a2(), x_next), d2_next);
  if (alpha != 1.0) axpy(alpha - 1.0, matvec(problem.a2(), x), d2_next);

  const Vector dh_next = matvec_transpose(problem.a2(), d2_next);
  return concat({x_next, d2_next, dh_next});
}

Vector pbs_splitting_step(const BlockOperator& op, double alpha, std::span<const double> v) {
  Vector r = op.rhs();
  axpy(-1.0, op(v), r);
  Vector out(v.begin(), v.end());
  axpy(1.0, apply_pbs(op.problem(), alpha, r), out);
  return out;
}

SolveResult pbs_iterate(const IlsProblem& problem, double alpha, const PbsIterateOptions& options) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::DomainError, "PBS parameter must be positive");
  const auto start = std::chrono::steady_clock::now();
  const BlockOperator op(problem, BlockKind::Augmented6);
  const double r0 = norm2(op.rhs());

  SolveResult out;
  out.solution.assign(op.dim(), 0.0);
  SolveReport& rep = out.report;
  if (r0 == 0.0) {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    rep.final_rel_residual = 0.0;
  } else {
    Vector r(op.dim());
    for (std::size_t k = 1; k <= options.maxit; ++k) {
      out.solution = pbs_componentwise_step(problem, alpha, out.solution);
      op.apply(out.solution, r);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = op.rhs()[i] - r[i];
      const double rel = norm2(r) / r0;
      rep.iterations = k;
      rep.rel_residual_history.push_back(rel);
      rep.final_rel_residual = rel;
      if (rel <= options.tol) {
        rep.converged = true;
        rep.status = SolveStatus::Converged;
        break;
      }
      if (!std::isfinite(rel) || rel > options.divergence_threshold) {
        rep.status = SolveStatus::Diverged;
        break;
      }
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ils
