#pragma once

#include <cstddef>
#include <span>

#include "ils/vector.hpp"

namespace ils {

/// Square linear map applied matrix-free.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  [[nodiscard]] virtual std::size_t dim() const noexcept = 0;
  /// y = Op(x); x and y must not alias.
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

  [[nodiscard]] Vector operator()(std::span<const double> x) const {
    if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator input length");
    Vector y(dim());
    apply(x, y);
    return y;
  }
};

}  // namespace ils
