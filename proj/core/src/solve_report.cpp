#include "ils/solve_report.hpp"

namespace ils {

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

double rel_residual(const LinearOperator& op, std::span<const double> rhs, std::span<const double> x) {
  if (rhs.size() != op.dim() || x.size() != op.dim())
    throw Error(ErrorCode::DimensionMismatch, "rel_residual");
  Vector r = op(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  const double rn = norm2(r);
  const double r0 = norm2(rhs);
  if (r0 == 0.0) return rn == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return rn / r0;
}

double rel_error(std::span<const double> x, std::span<const double> x_ref) {
  const double ref = norm2(x_ref);
  if (ref == 0.0) throw Error(ErrorCode::ZeroReference, "reference solution has zero norm");
  return norm2(subtract(x, x_ref)) / ref;
}

}  // namespace ils
