#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ils/vector.hpp"

namespace ils {

/// Row-major dense matrix for small factorizations and test-scale oracles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

  [[nodiscard]] static DenseMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] Vector matvec(const DenseMatrix& a, std::span<const double> x);
[[nodiscard]] DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
[[nodiscard]] DenseMatrix transpose(const DenseMatrix& a);
[[nodiscard]] double frobenius_norm(const DenseMatrix& a);

}  // namespace ils
