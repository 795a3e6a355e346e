#include "ils/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace ils {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double max_abs_diagonal(const SparseMatrix& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) m = std::max(m, std::abs(s.at(i, i)));
  return m;
}

[[noreturn]] void throw_not_spd(std::size_t k, double pivot) {
  throw Error(ErrorCode::NotPositiveDefinite,
              "pivot " + std::to_string(k) + " = " + std::to_string(pivot) + " is not positive");
}

// Permuted copy C = S(perm, perm).
SparseMatrix permute_symmetric(const SparseMatrix& s, std::span<const std::size_t> perm) {
  const std::size_t n = s.rows();
  std::vector<std::size_t> pinv(n);
  for (std::size_t k = 0; k < n; ++k) pinv[perm[k]] = k;
  std::vector<Triplet> t;
  t.reserve(s.nnz());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
      t.push_back({pinv[i], pinv[s.col_idx()[k]], s.values()[k]});
  return csr_from_triplets(t, n, n);
}

}  // namespace

std::vector<std::size_t> reverse_cuthill_mckee(const SparseMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
      if (s.col_idx()[k] != i) ++degree[i];

  std::vector<bool> visited(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);

  auto bfs = [&](std::size_t root, std::vector<std::size_t>& out, std::vector<bool>& seen) {
    std::size_t head = out.size();
    out.push_back(root);
    seen[root] = true;
    std::vector<std::size_t> nbrs;
    while (head < out.size()) {
      const std::size_t v = out[head++];
      nbrs.clear();
      for (std::size_t k = s.row_ptr()[v]; k < s.row_ptr()[v + 1]; ++k) {
        const std::size_t w = s.col_idx()[k];
        if (!seen[w]) {
          seen[w] = true;
          nbrs.push_back(w);
        }
      }
      std::sort(nbrs.begin(), nbrs.end(), [&](std::size_t a, std::size_t b) {
        return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
      });
      out.insert(out.end(), nbrs.begin(), nbrs.end());
    }
  };

  std::vector<std::size_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });

  for (std::size_t start : by_degree) {
    if (visited[start]) continue;
    // pseudo-peripheral root: a few rounds of "jump to the last BFS node"
    std::size_t root = start;
    for (int round = 0; round < 3; ++round) {
      std::vector<std::size_t> trial;
      std::vector<bool> seen = visited;
      bfs(root, trial, seen);
      const std::size_t far = trial.back();
      if (far == root) break;
      root = far;
    }
    bfs(root, order, visited);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

CholeskyFactor cholesky_factor(const SparseMatrix& s, const CholeskyOptions& options) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::NonSquare, "cholesky_factor needs a square matrix");
  const std::size_t n = s.rows();
  const double threshold = options.pivot_tolerance * max_abs_diagonal(s);

  CholeskyFactor f;
  f.n_ = n;

  if (n <= options.dense_threshold) {
    f.dense_ = true;
    f.perm_.resize(n);
    std::iota(f.perm_.begin(), f.perm_.end(), std::size_t{0});
    std::vector<double>& l = f.dense_l_;
    l.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
        if (s.col_idx()[k] <= i) l[i * n + s.col_idx()[k]] = s.values()[k];
    // row-oriented Cholesky-Crout on the lower triangle
    for (std::size_t j = 0; j < n; ++j) {
      const double* lj = &l[j * n];
      double d = lj[j];
      for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
      if (!(d > threshold)) throw_not_spd(j, d);
      const double djj = std::sqrt(d);
      l[j * n + j] = djj;
      for (std::size_t i = j + 1; i < n; ++i) {
        double* li = &l[i * n];
        double v = li[j];
        for (std::size_t k = 0; k < j; ++k) v -= li[k] * lj[k];
        li[j] = v / djj;
      }
    }
    return f;
  }

  // Sparse up-looking factorization on the RCM-permuted matrix.
  f.dense_ = false;
  f.perm_ = reverse_cuthill_mckee(s);
  const SparseMatrix c = permute_symmetric(s, f.perm_);
  auto rp = c.row_ptr();
  auto ci = c.col_idx();
  auto cv = c.values();

  // elimination tree
  std::vector<std::size_t> parent(n, kNone), ancestor(n, kNone);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t p = rp[k]; p < rp[k + 1]; ++p) {
      std::size_t i = ci[p];
      while (i != kNone && i < k) {
        const std::size_t inext = ancestor[i];
        ancestor[i] = k;
        if (inext == kNone) parent[i] = k;
        i = inext;
      }
    }
  }

  // Nonzero pattern of row k of L, in topological order, via the etree.
  std::vector<std::size_t> mark(n, kNone), stack(n), path(n);
  auto ereach = [&](std::size_t k) -> std::size_t {
    std::size_t top = n;
    mark[k] = k;
    for (std::size_t p = rp[k]; p < rp[k + 1]; ++p) {
      std::size_t i = ci[p];
      if (i > k) break;
      std::size_t len = 0;
      for (; mark[i] != k; i = parent[i]) {
        path[len++] = i;
        mark[i] = k;
      }
      while (len > 0) stack[--top] = path[--len];
    }
    return top;
  };

  std::vector<std::size_t> counts(n, 1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = ereach(k); t < n; ++t) ++counts[stack[t]];
  std::fill(mark.begin(), mark.end(), kNone);

  f.col_ptr_.assign(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) f.col_ptr_[j + 1] = f.col_ptr_[j] + counts[j];
  f.row_idx_.assign(f.col_ptr_[n], 0);
  f.values_.assign(f.col_ptr_[n], 0.0);
  std::vector<std::size_t> next(f.col_ptr_.begin(), f.col_ptr_.end() - 1);
  std::vector<double> x(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t top = ereach(k);
    x[k] = 0.0;
    for (std::size_t p = rp[k]; p < rp[k + 1] && ci[p] <= k; ++p) x[ci[p]] = cv[p];
    double d = x[k];
    x[k] = 0.0;
    for (; top < n; ++top) {
      const std::size_t i = stack[top];
      const double lki = x[i] / f.values_[f.col_ptr_[i]];
      x[i] = 0.0;
      for (std::size_t p = f.col_ptr_[i] + 1; p < next[i]; ++p) x[f.row_idx_[p]] -= f.values_[p] * lki;
      d -= lki * lki;
      const std::size_t p = next[i]++;
      f.row_idx_[p] = k;
      f.values_[p] = lki;
    }
    if (!(d > threshold)) throw_not_spd(k, d);
    const std::size_t p = next[k]++;
    f.row_idx_[p] = k;
    f.values_[p] = std::sqrt(d);
  }
  return f;
}

std::size_t CholeskyFactor::factor_nnz() const noexcept {
  return dense_ ? n_ * (n_ + 1) / 2 : values_.size();
}

void CholeskyFactor::lower_solve(std::span<double> y) const {
  if (dense_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double* li = &dense_l_[i * n_];
      double v = y[i];
      for (std::size_t k = 0; k < i; ++k) v -= li[k] * y[k];
      y[i] = v / li[i];
    }
    return;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    y[j] /= values_[col_ptr_[j]];
    for (std::size_t p = col_ptr_[j] + 1; p < col_ptr_[j + 1]; ++p) y[row_idx_[p]] -= values_[p] * y[j];
  }
}

void CholeskyFactor::upper_solve(std::span<double> y) const {
  if (dense_) {
    for (std::size_t i = n_; i-- > 0;) {
      y[i] /= dense_l_[i * n_ + i];
      const double yi = y[i];
      for (std::size_t k = 0; k < i; ++k) y[k] -= dense_l_[i * n_ + k] * yi;
    }
    return;
  }
  for (std::size_t j = n_; j-- > 0;) {
    double v = y[j];
    for (std::size_t p = col_ptr_[j] + 1; p < col_ptr_[j + 1]; ++p) v -= values_[p] * y[row_idx_[p]];
    y[j] = v / values_[col_ptr_[j]];
  }
}

void CholeskyFactor::solve_in_place(std::span<double> w) const {
  if (w.size() != n_) throw Error(ErrorCode::DimensionMismatch, "cholesky solve: length mismatch");
  if (dense_) {
    lower_solve(w);
    upper_solve(w);
    return;
  }
  Vector y(n_);
  for (std::size_t k = 0; k < n_; ++k) y[k] = w[perm_[k]];
  lower_solve(y);
  upper_solve(y);
  for (std::size_t k = 0; k < n_; ++k) w[perm_[k]] = y[k];
}

Vector CholeskyFactor::solve(std::span<const double> w) const {
  Vector z(w.begin(), w.end());
  solve_in_place(z);
  return z;
}

Vector CholeskyFactor::apply_inverse_factor(std::span<const double> w) const {
  if (w.size() != n_) throw Error(ErrorCode::DimensionMismatch, "apply_inverse_factor");
  Vector y(n_);
  for (std::size_t k = 0; k < n_; ++k) y[k] = w[perm_[k]];
  lower_solve(y);
  return y;
}

Vector CholeskyFactor::apply_inverse_factor_transpose(std::span<const double> y) const {
  if (y.size() != n_) throw Error(ErrorCode::DimensionMismatch, "apply_inverse_factor_transpose");
  Vector t(y.begin(), y.end());
  upper_solve(t);
  Vector w(n_);
  for (std::size_t k = 0; k < n_; ++k) w[perm_[k]] = t[k];
  return w;
}

DenseMatrix CholeskyFactor::lower_dense() const {
  DenseMatrix l(n_, n_);
  if (dense_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j) l(i, j) = dense_l_[i * n_ + j];
    return l;
  }
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) l(row_idx_[p], j) = values_[p];
  return l;
}

Vector cholesky_solve(const CholeskyFactor& factor, std::span<const double> w) { return factor.solve(w); }

}  // namespace ils
