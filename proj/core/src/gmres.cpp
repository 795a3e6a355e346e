#include "ils/gmres.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace ils {
namespace {

void apply_prec(const LinearOperator* m, std::span<const double> in, std::span<double> out) {
  if (m == nullptr) {
    std::copy(in.begin(), in.end(), out.begin());
  } else {
    m->apply(in, out);
  }
}

}  // namespace

Arnoldi::Arnoldi(const LinearOperator& a, const LinearOperator* m, std::span<const double> start)
    : a_(&a), m_(m), work_(a.dim()), beta_(norm2(start)) {
  if (start.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "Arnoldi start vector");
  if (m != nullptr && m->dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "preconditioner dimension");
  if (beta_ == 0.0) throw Error(ErrorCode::InvalidArgument, "Arnoldi start vector is zero");
  Vector v0(start.begin(), start.end());
  scale(1.0 / beta_, v0);
  basis_.push_back(std::move(v0));
}

double Arnoldi::step() {
  const std::size_t j = size();
  Vector w(a_->dim());
  a_->apply(basis_[j], work_);
  apply_prec(m_, work_, w);
  Vector h(j + 2, 0.0);
  for (std::size_t i = 0; i <= j; ++i) {
    h[i] = dot(w, basis_[i]);
    axpy(-h[i], basis_[i], w);
  }
  const double hn = norm2(w);
  h[j + 1] = hn;
  if (hn > 0.0) scale(1.0 / hn, w);
  basis_.push_back(std::move(w));
  h_.push_back(std::move(h));
  return hn;
}

GmresResult gmres(const LinearOperator& a, const LinearOperator* m, std::span<const double> rhs,
                  const GmresConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = a.dim();
  if (rhs.size() != d) throw Error(ErrorCode::DimensionMismatch, "gmres: rhs length " + std::to_string(rhs.size()));
  if (m != nullptr && m->dim() != d) throw Error(ErrorCode::DimensionMismatch, "gmres: preconditioner dimension");
  if (config.restart && *config.restart == 0) throw Error(ErrorCode::InvalidArgument, "gmres: restart must be >= 1");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "gmres: tol must be positive");

  GmresResult out;
  out.solution.assign(d, 0.0);
  SolveReport& rep = out.report;
  auto finish = [&]() -> GmresResult {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(out);
  };

  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    rep.final_rel_residual = 0.0;
    return finish();
  }

  const std::size_t cycle_len = config.restart.value_or(config.maxit);
  const double breakdown_tol = 1e-14 * bnorm;
  double prec_rhs_norm = 0.0;
  if (!config.track_true_residual) {
    Vector pb(d);
    apply_prec(m, rhs, pb);
    prec_rhs_norm = norm2(pb);
  }

  Vector& x = out.solution;
  Vector r(d), z(d), xt(d);
  auto true_rel = [&](std::span<const double> v) {
    a.apply(v, r);
    for (std::size_t i = 0; i < d; ++i) r[i] = rhs[i] - r[i];
    return norm2(r) / bnorm;
  };

  std::size_t total = 0;
  while (total < config.maxit) {
    true_rel(x);
    apply_prec(m, r, z);
    if (norm2(z) == 0.0) break;
    Arnoldi arnoldi(a, m, z);
    ++out.cycles;

    std::vector<Vector> rcols;
    Vector cs, sn, g{arnoldi.beta()};
    bool done = false;
    for (std::size_t j = 0; j < cycle_len && total < config.maxit; ++j) {
      const double hnext = arnoldi.step();
      Vector col = arnoldi.hessenberg_column(j);
      for (std::size_t i = 0; i < j; ++i) {
        const double t = cs[i] * col[i] + sn[i] * col[i + 1];
        col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
        col[i] = t;
      }
      const double denom = std::hypot(col[j], col[j + 1]);
      const double c = denom == 0.0 ? 1.0 : col[j] / denom;
      const double s = denom == 0.0 ? 0.0 : col[j + 1] / denom;
      cs.push_back(c);
      sn.push_back(s);
      col[j] = denom;
      col[j + 1] = 0.0;
      g.push_back(-s * g[j]);
      g[j] *= c;
      col.resize(j + 1);
      rcols.push_back(std::move(col));
      ++total;
      const double estimate = std::abs(g[j + 1]);
      out.preconditioned_estimates.push_back(estimate);

      const bool breakdown = hnext <= breakdown_tol;
      const bool cycle_end = j + 1 == cycle_len || total == config.maxit;
      const bool estimate_done = !config.track_true_residual && estimate <= config.tol * prec_rhs_norm;
      if (!(config.track_true_residual || breakdown || cycle_end || estimate_done)) continue;

      // y = R^{-1} g, then xt = x + V y
      const std::size_t k = j + 1;
      Vector y(k);
      for (std::size_t i = k; i-- > 0;) {
        double v = g[i];
        for (std::size_t l = i + 1; l < k; ++l) v -= rcols[l][i] * y[l];
        y[i] = rcols[i][i] != 0.0 ? v / rcols[i][i] : 0.0;
      }
      xt = x;
      for (std::size_t i = 0; i < k; ++i) axpy(y[i], arnoldi.basis()[i], xt);
      const double rel = true_rel(xt);
      rep.iterations = total;
      rep.rel_residual_history.push_back(rel);
      rep.final_rel_residual = rel;
      if (rel <= config.tol) {
        x = xt;
        rep.converged = true;
        rep.status = SolveStatus::Converged;
        out.happy_breakdown = breakdown;
        return finish();
      }
      if (breakdown || cycle_end || estimate_done) {
        out.happy_breakdown = out.happy_breakdown || breakdown;
        x = xt;
        done = true;
        break;
      }
    }
    if (!done) break;
  }
  rep.iterations = total;
  rep.status = SolveStatus::MaxIterations;
  return finish();
}

GmresResult gmres_full(const LinearOperator& a, const LinearOperator* m, std::span<const double> rhs,
                       GmresConfig config) {
  config.restart.reset();
  return gmres(a, m, rhs, config);
}

}  // namespace ils
