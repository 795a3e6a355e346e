#include "ils/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "ils/block_operator.hpp"
#include "ils/matrix_market.hpp"

namespace ils {

IlsProblem gen_example1() {
  const std::vector<Triplet> a1 = {
      {0, 0, 6}, {0, 1, 1}, {0, 2, 1},  //
      {1, 0, 2}, {1, 1, 4}, {1, 2, 5},  //
      {2, 0, 1}, {2, 1, 1}, {2, 2, 5},
  };
  const std::vector<Triplet> a2 = {
      {0, 0, 2}, {0, 1, 1}, {0, 2, 1},  //
      {1, 0, 1}, {1, 1, 1}, {1, 2, 1},  //
      {2, 0, 1}, {2, 1, 2}, {2, 2, 2},  //
      {3, 0, 0}, {3, 1, 1}, {3, 2, 1},
  };
  return build_problem(csr_from_triplets(a1, 3, 3), csr_from_triplets(a2, 4, 3), Vector(3, 1.0), Vector(4, 1.0));
}

IlsProblem gen_identity_shifted(SparseMatrix a1, double c) {
  if (a1.rows() != a1.cols())
    throw Error(ErrorCode::NonSquare, "A1 is " + std::to_string(a1.rows()) + "x" + std::to_string(a1.cols()));
  const std::size_t n = a1.rows();
  return build_problem(std::move(a1), SparseMatrix::identity(n, c), Vector(n, 1.0), Vector(n, 1.0));
}

IlsProblem gen_identity_shifted(const std::filesystem::path& path, double c) {
  return gen_identity_shifted(read_matrix_market(path), c);
}

SparseMatrix pde_matrix(const PdeSpec& spec) {
  if (spec.n0 < 1) throw Error(ErrorCode::InvalidArgument, "n0 must be >= 1");
  const std::size_t n0 = spec.n0;
  const double h = 1.0 / static_cast<double>(n0 + 1);
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Triplet> t;
  t.reserve(5 * n0 * n0);
  for (std::size_t j = 0; j < n0; ++j) {
    for (std::size_t i = 0; i < n0; ++i) {
      const double x = static_cast<double>(i + 1) * h;
      const double y = static_cast<double>(j + 1) * h;
      const std::size_t k = j * n0 + i;
      const double bx = spec.convection ? std::sin(x + y) / (2.0 * h) : 0.0;
      const double by = spec.convection ? std::cos(x - y) / (2.0 * h) : 0.0;
      t.push_back({k, k, 4.0 * inv_h2 + spec.reaction * (x + y)});
      if (i > 0) t.push_back({k, k - 1, -inv_h2 - bx});
      if (i + 1 < n0) t.push_back({k, k + 1, -inv_h2 + bx});
      if (j > 0) t.push_back({k, k - n0, -inv_h2 - by});
      if (j + 1 < n0) t.push_back({k, k + n0, -inv_h2 + by});
    }
  }
  return csr_from_triplets(t, n0 * n0, n0 * n0);
}

IlsProblem gen_pde_problem(const PdeSpec& spec) {
  SparseMatrix a1 = pde_matrix(spec);
  const std::size_t n = a1.rows();
  return build_problem(std::move(a1), SparseMatrix::identity(n, spec.a2_scale), Vector(n, 1.0), Vector(n, 1.0));
}

SweepResult alpha_sweep(const IlsProblem& problem, const std::vector<double>& alphas, double tol, std::size_t maxit) {
  SweepResult out;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (double alpha : alphas) {
    const SolveResult r = pbs_iterate(problem, alpha, {.tol = tol, .maxit = maxit});
    out.points.push_back({alpha, r.report.iterations, r.report.status});
    if (r.report.converged && r.report.iterations < best) {
      best = r.report.iterations;
      out.best_alpha = alpha;
    }
  }
  return out;
}

std::string method_label(const MethodSpec& spec) {
  switch (spec.method) {
    case Method::Pbs: {
      std::ostringstream os;
      os << "PBS(alpha=" << spec.alpha << ")";
      return os.str();
    }
    case Method::Bs1: return "BS1";
    case Method::Bs2: return "BS2";
    case Method::Bs3: return "BS3";
    case Method::None: return "No-Prec";
  }
  return "?";
}

MethodSpec parse_method(const std::string& text, double alpha) {
  if (text == "pbs") return {Method::Pbs, alpha};
  if (text == "bs1") return {Method::Bs1, alpha};
  if (text == "bs2") return {Method::Bs2, alpha};
  if (text == "bs3") return {Method::Bs3, alpha};
  if (text == "none") return {Method::None, alpha};
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + text + "' (pbs|bs1|bs2|bs3|none)");
}

std::string problem_label(const IlsProblem& problem) {
  return std::to_string(problem.m()) + "x" + std::to_string(problem.n());
}

MethodRun run_method(const IlsProblem& problem, const MethodSpec& spec, const GmresConfig& config) {
  const BlockKind kind =
      spec.method == Method::Pbs || spec.method == Method::None ? BlockKind::Augmented6 : BlockKind::XinMengB;
  const BlockOperator op(problem, kind);
  std::unique_ptr<LinearOperator> prec;
  switch (spec.method) {
    case Method::Pbs: prec = std::make_unique<PbsPreconditioner>(problem, spec.alpha); break;
    case Method::Bs1: prec = std::make_unique<BsPreconditioner>(problem, BsKind::BS1); break;
    case Method::Bs2: prec = std::make_unique<BsPreconditioner>(problem, BsKind::BS2); break;
    case Method::Bs3: prec = std::make_unique<BsPreconditioner>(problem, BsKind::BS3); break;
    case Method::None: break;
  }
  MethodRun run{gmres(op, prec.get(), op.rhs(), config), {}};
  run.x = op.extract_x(run.gmres.solution);
  return run;
}

std::vector<BenchRow> run_benchmark(const IlsProblem& problem, const std::vector<MethodSpec>& methods,
                                    const GmresConfig& config, const std::optional<Vector>& x_ref) {
  const Vector reference = x_ref ? *x_ref : reference_solution(problem);
  const std::string label = problem_label(problem);
  std::vector<BenchRow> rows;
  for (const MethodSpec& spec : methods) {
    BenchRow row{label, method_label(spec)};
    try {
      const MethodRun run = run_method(problem, spec, config);
      row.iterations = run.gmres.report.iterations;
      row.wall_seconds = run.gmres.report.wall_seconds;
      row.rel = run.gmres.report.final_rel_residual;
      row.converged = run.gmres.report.converged;
      row.err = norm2(reference) == 0.0 ? norm2(run.x) : rel_error(run.x, reference);
    } catch (const Error&) {
      row.converged = false;
      row.err = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "problem,method,iter,cpu_s,rel,err,converged\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.method << ',' << r.iterations << ',' << std::setprecision(6) << r.wall_seconds
        << ',' << std::scientific << std::setprecision(3) << r.rel << ',' << r.err << std::defaultfloat << ','
        << (r.converged ? "true" : "false") << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::size_t wp = 7, wm = 6;
  for (const auto& r : rows) {
    wp = std::max(wp, r.problem.size());
    wm = std::max(wm, r.method.size());
  }
  const auto old_flags = out.flags();
  out << std::left << std::setw(static_cast<int>(wp)) << "problem" << "  " << std::setw(static_cast<int>(wm))
      << "method" << "  " << std::right << std::setw(6) << "iter" << "  " << std::setw(9) << "cpu_s" << "  "
      << std::setw(10) << "rel" << "  " << std::setw(10) << "err" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(wp)) << r.problem << "  " << std::setw(static_cast<int>(wm))
        << r.method << "  " << std::right;
    if (r.converged) {
      out << std::setw(6) << r.iterations;
    } else {
      out << std::setw(6) << ("+" + std::to_string(r.iterations));
    }
    out << "  " << std::fixed << std::setprecision(4) << std::setw(9) << r.wall_seconds << "  " << std::scientific
        << std::setprecision(2) << std::setw(10) << r.rel << "  " << std::setw(10) << r.err << "\n";
    out.flags(old_flags);
  }
  out.flags(old_flags);
}

IlsProblem parse_problem_spec(const std::string& spec) {
  if (spec == "example1") return gen_example1();
  if (spec.starts_with("pde:")) {
    const std::string num = spec.substr(4);
    std::size_t n0 = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n0);
    if (ec != std::errc{} || ptr != num.data() + num.size() || n0 == 0)
      throw Error(ErrorCode::InvalidArgument, "bad pde spec '" + spec + "', expected pde:<n0>");
    return gen_pde_problem({.n0 = n0});
  }
  if (spec.starts_with("mtx:")) {
    const std::size_t colon = spec.rfind(':');
    if (colon <= 4) throw Error(ErrorCode::InvalidArgument, "bad mtx spec '" + spec + "', expected mtx:<path>:<c>");
    const std::string path = spec.substr(4, colon - 4);
    const std::string cs = spec.substr(colon + 1);
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(cs, &used);
      if (used != cs.size()) throw std::invalid_argument(cs);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad shift '" + cs + "' in '" + spec + "'");
    }
    return gen_identity_shifted(std::filesystem::path(path), c);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown problem spec '" + spec + "' (example1 | mtx:<path>:<c> | pde:<n0>)");
}

}  // namespace ils
