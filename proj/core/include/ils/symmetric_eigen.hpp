#pragma once

#include "ils/dense_matrix.hpp"

namespace ils {

struct SymmetricEigen {
  /// Ascending.
  Vector values;
  /// Column k holds the unit eigenvector of values[k].
  DenseMatrix vectors;
};

/// Cyclic Jacobi eigen-decomposition of a dense symmetric matrix.
[[nodiscard]] SymmetricEigen symmetric_eigen(const DenseMatrix& s, double tol = 1e-15,
                                             std::size_t max_sweeps = 100);

}  // namespace ils
