#pragma once

#include <cstddef>

#include "ils/dense_matrix.hpp"
#include "ils/linear_operator.hpp"
#include "ils/problem.hpp"

namespace ils {

enum class BlockKind {
  /// [P 0 I; A2 I 0; 0 -A2^T I] acting on (x; delta2; A1^T delta1), size 2n+q.
  Augmented6,
  /// [I A1 0; 0 P A2^T; 0 A2 I] acting on (delta1; x; delta2), size p+n+q.
  XinMengB,
};

/// Unassembled 3x3 block operator over an IlsProblem. Holds a reference; the
/// problem must outlive it.
class BlockOperator final : public LinearOperator {
 public:
  BlockOperator(const IlsProblem& problem, BlockKind kind);

  [[nodiscard]] std::size_t dim() const noexcept override { return dim_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

  [[nodiscard]] BlockKind kind() const noexcept { return kind_; }
  [[nodiscard]] const IlsProblem& problem() const noexcept { return *problem_; }
  /// (A1^T b1; b2; 0) for Augmented6, (b1; A1^T b1; b2) for XinMengB.
  [[nodiscard]] const Vector& rhs() const noexcept { return rhs_; }

  /// Offset of the x block within the stacked unknown.
  [[nodiscard]] std::size_t x_offset() const noexcept;
  [[nodiscard]] Vector extract_x(std::span<const double> v) const;

 private:
  const IlsProblem* problem_;
  BlockKind kind_;
  std::size_t dim_;
  Vector rhs_;
};

[[nodiscard]] BlockOperator assemble_block_operator(const IlsProblem& problem, BlockKind kind);

/// Exact stacked solution built from reference_solution. Throws HessianNotSPD.
[[nodiscard]] Vector augmented_reference(const IlsProblem& problem, BlockKind kind);

/// Explicit dense assembly; test oracle only, refuses dim > max_dim.
[[nodiscard]] DenseMatrix assemble_dense(const BlockOperator& op, std::size_t max_dim = 200);

/// Dense image of any operator column by column.
[[nodiscard]] DenseMatrix to_dense(const LinearOperator& op);

}  // namespace ils
