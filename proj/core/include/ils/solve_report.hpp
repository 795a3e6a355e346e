#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

#include "ils/linear_operator.hpp"

namespace ils {

enum class SolveStatus { Converged, MaxIterations, Diverged };

[[nodiscard]] std::string_view to_string(SolveStatus status) noexcept;

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  /// One entry per iteration: ||rhs - A x_k|| / ||rhs||.
  Vector rel_residual_history;
  double final_rel_residual = 1.0;
  std::optional<double> rel_error;
  double wall_seconds = 0.0;
};

struct SolveResult {
  SolveReport report;
  Vector solution;
};

/// ||rhs - A x|| / ||rhs||, with the zero initial guess convention r0 = rhs.
/// Returns 0 when rhs and the residual both vanish.
[[nodiscard]] double rel_residual(const LinearOperator& op, std::span<const double> rhs,
                                  std::span<const double> x);

/// ||x - x_ref|| / ||x_ref||. Throws ZeroReference when x_ref = 0.
[[nodiscard]] double rel_error(std::span<const double> x, std::span<const double> x_ref);

}  // namespace ils
