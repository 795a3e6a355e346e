#include "ils/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ils/dense_matrix.hpp"

namespace ils {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols)
    : nrows_(nrows), ncols_(ncols), row_ptr_(nrows + 1, 0) {}

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != nrows_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != values_.size() ||
      col_idx_.size() != values_.size())
    throw Error(ErrorCode::DimensionMismatch, "CSR arrays inconsistent with shape");
  for (std::size_t i = 0; i < nrows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw Error(ErrorCode::InvalidArgument, "row_ptr decreasing");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= ncols_) throw Error(ErrorCode::IndexOutOfRange, "column index out of range");
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1])
        throw Error(ErrorCode::InvalidArgument, "column indices not strictly increasing");
    }
  }
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= nrows_ || col >= ncols_) throw Error(ErrorCode::IndexOutOfRange, "at()");
  auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

SparseMatrix SparseMatrix::identity(std::size_t n, double diagonal) {
  if (diagonal == 0.0) return SparseMatrix(n, n);
  std::vector<std::size_t> rp(n + 1), ci(n);
  std::iota(rp.begin(), rp.end(), std::size_t{0});
  std::iota(ci.begin(), ci.end(), std::size_t{0});
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::vector<double>(n, diagonal));
}

SparseMatrix csr_from_triplets(std::span<const Triplet> triplets, std::size_t nrows, std::size_t ncols) {
  std::vector<std::size_t> counts(nrows + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= nrows || t.col >= ncols)
      throw Error(ErrorCode::IndexOutOfRange, "triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                                  ") outside " + std::to_string(nrows) + "x" + std::to_string(ncols));
    ++counts[t.row + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  // bucket by row, then sort and merge each row
  std::vector<std::pair<std::size_t, double>> bucket(triplets.size());
  std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
  for (const auto& t : triplets) bucket[next[t.row]++] = {t.col, t.value};

  std::vector<std::size_t> rp(nrows + 1, 0), ci;
  std::vector<double> vals;
  ci.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t i = 0; i < nrows; ++i) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last;) {
      std::size_t col = it->first;
      double sum = 0.0;
      for (; it != last && it->first == col; ++it) sum += it->second;
      if (sum != 0.0) {
        ci.push_back(col);
        vals.push_back(sum);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(nrows, ncols, std::move(rp), std::move(ci), std::move(vals));
}

std::vector<Triplet> to_triplets(const SparseMatrix& a) {
  std::vector<Triplet> out;
  out.reserve(a.nnz());
  auto rp = a.row_ptr();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) out.push_back({i, a.col_idx()[k], a.values()[k]});
  return out;
}

SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<std::size_t> rp(a.cols() + 1, 0);
  for (std::size_t c : a.col_idx()) ++rp[c + 1];
  std::partial_sum(rp.begin(), rp.end(), rp.begin());
  std::vector<std::size_t> next(rp.begin(), rp.end() - 1);
  std::vector<std::size_t> ci(a.nnz());
  std::vector<double> vals(a.nnz());
  auto arp = a.row_ptr();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = arp[i]; k < arp[i + 1]; ++k) {
      std::size_t dst = next[a.col_idx()[k]]++;
      ci[dst] = i;
      vals[dst] = a.values()[k];
    }
  }
  return SparseMatrix(a.cols(), a.rows(), std::move(rp), std::move(ci), std::move(vals));
}

void matvec(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.cols() || y.size() != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "matvec: expected x of length " + std::to_string(a.cols()));
  auto rp = a.row_ptr();
  auto ci = a.col_idx();
  auto v = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += v[k] * x[ci[k]];
    y[i] = s;
  }
}

Vector matvec(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.rows());
  matvec(a, x, y);
  return y;
}

void matvec_transpose(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.rows() || y.size() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "matvec_transpose: expected x of length " + std::to_string(a.rows()));
  std::fill(y.begin(), y.end(), 0.0);
  auto rp = a.row_ptr();
  auto ci = a.col_idx();
  auto v = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) y[ci[k]] += v[k] * xi;
  }
}

Vector matvec_transpose(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.cols());
  matvec_transpose(a, x, y);
  return y;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "add: shape mismatch");
  std::vector<std::size_t> rp(a.rows() + 1, 0), ci;
  std::vector<double> vals;
  ci.reserve(a.nnz() + b.nnz());
  vals.reserve(a.nnz() + b.nnz());
  auto push = [&](std::size_t c, double v) {
    if (v != 0.0) {
      ci.push_back(c);
      vals.push_back(v);
    }
  };
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t ka = a.row_ptr()[i], ea = a.row_ptr()[i + 1];
    std::size_t kb = b.row_ptr()[i], eb = b.row_ptr()[i + 1];
    while (ka < ea || kb < eb) {
      std::size_t ca = ka < ea ? a.col_idx()[ka] : a.cols();
      std::size_t cb = kb < eb ? b.col_idx()[kb] : b.cols();
      if (ca == cb) {
        push(ca, alpha * a.values()[ka++] + beta * b.values()[kb++]);
      } else if (ca < cb) {
        push(ca, alpha * a.values()[ka++]);
      } else {
        push(cb, beta * b.values()[kb++]);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(a.rows(), a.cols(), std::move(rp), std::move(ci), std::move(vals));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "multiply: inner dimension mismatch");
  // Gustavson row-by-row product with a dense accumulator
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<std::size_t> marker(b.cols(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> pattern;
  std::vector<std::size_t> rp(a.rows() + 1, 0), ci;
  std::vector<double> vals;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    pattern.clear();
    for (std::size_t ka = a.row_ptr()[i]; ka < a.row_ptr()[i + 1]; ++ka) {
      const std::size_t k = a.col_idx()[ka];
      const double av = a.values()[ka];
      for (std::size_t kb = b.row_ptr()[k]; kb < b.row_ptr()[k + 1]; ++kb) {
        const std::size_t j = b.col_idx()[kb];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          pattern.push_back(j);
        }
        acc[j] += av * b.values()[kb];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (std::size_t j : pattern) {
      if (acc[j] != 0.0) {
        ci.push_back(j);
        vals.push_back(acc[j]);
      }
    }
    rp[i + 1] = ci.size();
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(rp), std::move(ci), std::move(vals));
}

SparseMatrix gram(const SparseMatrix& a) {
  const SparseMatrix c = multiply(transpose(a), a);
  // Averaging with the transpose makes the result bitwise symmetric even if
  // summation order differed across the diagonal.
  return add(c, transpose(c), 0.5, 0.5);
}

bool is_exactly_symmetric(const SparseMatrix& a) {
  if (a.rows() != a.cols()) return false;
  return a == transpose(a);
}

DenseMatrix to_dense(const SparseMatrix& a) {
  DenseMatrix d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) d(i, a.col_idx()[k]) = a.values()[k];
  return d;
}

}  // namespace ils
