#include "ils/block_operator.hpp"

#include <string>

namespace ils {

BlockOperator::BlockOperator(const IlsProblem& problem, BlockKind kind) : problem_(&problem), kind_(kind) {
  const std::size_t n = problem.n(), p = problem.p_rows(), q = problem.q_rows();
  if (kind == BlockKind::Augmented6) {
    dim_ = 2 * n + q;
    rhs_ = concat({problem.b1_hat(), problem.b2(), Vector(n, 0.0)});
  } else {
    dim_ = p + n + q;
    rhs_ = concat({problem.b1(), problem.b1_hat(), problem.b2()});
  }
}

std::size_t BlockOperator::x_offset() const noexcept {
  return kind_ == BlockKind::Augmented6 ? 0 : problem_->p_rows();
}

Vector BlockOperator::extract_x(std::span<const double> v) const {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "extract_x");
  auto x = v.subspan(x_offset(), problem_->n());
  return Vector(x.begin(), x.end());
}

void BlockOperator::apply(std::span<const double> v, std::span<double> y) const {
  if (v.size() != dim_ || y.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "BlockOperator::apply");
  const IlsProblem& pr = *problem_;
  const std::size_t n = pr.n(), p = pr.p_rows(), q = pr.q_rows();

  if (kind_ == BlockKind::Augmented6) {
    // (x; delta2; delta1_hat) -> (P x + delta1_hat; A2 x + delta2; -A2^T delta2 + delta1_hat)
    auto x = v.subspan(0, n), d2 = v.subspan(n, q), dh = v.subspan(n + q, n);
    auto y1 = y.subspan(0, n), y2 = y.subspan(n, q), y3 = y.subspan(n + q, n);
    matvec(pr.p(), x, y1);
    axpy(1.0, dh, y1);
    matvec(pr.a2(), x, y2);
    axpy(1.0, d2, y2);
    matvec_transpose(pr.a2(), d2, y3);
    for (std::size_t i = 0; i < n; ++i) y3[i] = dh[i] - y3[i];
    return;
  }
  // (delta1; x; delta2) -> (delta1 + A1 x; P x + A2^T delta2; A2 x + delta2)
  auto d1 = v.subspan(0, p), x = v.subspan(p, n), d2 = v.subspan(p + n, q);
  auto y1 = y.subspan(0, p), y2 = y.subspan(p, n), y3 = y.subspan(p + n, q);
  matvec(pr.a1(), x, y1);
  axpy(1.0, d1, y1);
  matvec(pr.p(), x, y2);
  axpy(1.0, matvec_transpose(pr.a2(), d2), y2);
  matvec(pr.a2(), x, y3);
  axpy(1.0, d2, y3);
}

BlockOperator assemble_block_operator(const IlsProblem& problem, BlockKind kind) { return {problem, kind}; }

Vector augmented_reference(const IlsProblem& problem, BlockKind kind) {
  const Vector x = reference_solution(problem);
  Vector delta2 = problem.b2();
  axpy(-1.0, matvec(problem.a2(), x), delta2);
  if (kind == BlockKind::Augmented6) {
    const Vector delta1_hat = matvec_transpose(problem.a2(), delta2);
    return concat({x, delta2, delta1_hat});
  }
  Vector delta1 = problem.b1();
  axpy(-1.0, matvec(problem.a1(), x), delta1);
  return concat({delta1, x, delta2});
}

DenseMatrix to_dense(const LinearOperator& op) {
  const std::size_t d = op.dim();
  DenseMatrix out(d, d);
  Vector e(d, 0.0), col(d);
  for (std::size_t j = 0; j < d; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < d; ++i) out(i, j) = col[i];
  }
  return out;
}

DenseMatrix assemble_dense(const BlockOperator& op, std::size_t max_dim) {
  if (op.dim() > max_dim)
    throw Error(ErrorCode::ProblemTooLarge,
                "dense assembly of dim " + std::to_string(op.dim()) + " exceeds " + std::to_string(max_dim));
  return to_dense(op);
}

}  // namespace ils
