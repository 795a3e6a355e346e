// Command-line front end: analyze, solve, sweep and bench subcommands.
//
// Exit codes: 0 converged, 2 not converged, 1 usage or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ils/block_operator.hpp"
#include "ils/experiments.hpp"
#include "ils/pbs.hpp"
#include "ils/spectral.hpp"

namespace {

constexpr int kConverged = 0;
constexpr int kUsage = 1;
constexpr int kNotConverged = 2;

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ils::Error(ils::ErrorCode::InvalidArgument, "bad alpha '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ils::Error(ils::ErrorCode::InvalidArgument, "empty alpha list");
  return out;
}

double resolve_alpha(const std::string& text, const ils::IlsProblem& problem) {
  if (text == "opt") return ils::analyze(problem).alpha_opt;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw ils::Error(ils::ErrorCode::InvalidArgument, "bad alpha '" + text + "'");
  return v;
}

std::optional<std::size_t> parse_restart(const std::string& text) {
  if (text == "full") return std::nullopt;
  const long v = std::stol(text);
  if (v < 1) throw ils::Error(ils::ErrorCode::InvalidArgument, "restart must be >= 1 or 'full'");
  return static_cast<std::size_t>(v);
}

void print_report(const ils::SolveReport& rep) {
  std::cout << "status      " << ils::to_string(rep.status) << "\n"
            << "iterations  " << rep.iterations << "\n"
            << std::scientific << std::setprecision(3) << "rel         " << rep.final_rel_residual << "\n";
  if (rep.rel_error) std::cout << "err         " << *rep.rel_error << "\n";
  std::cout << std::fixed << std::setprecision(4) << "cpu_s       " << rep.wall_seconds << "\n"
            << std::defaultfloat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indefinite least squares solvers with the parameterized block-splitting preconditioner"};
  app.require_subcommand(1);

  std::string problem_spec = "example1";
  double power_tol = 1e-8;
  std::size_t power_maxit = 5000;
  auto* analyze = app.add_subcommand("analyze", "Print mu_max, the convergence interval, alpha_opt and rho_opt");
  analyze->add_option("--problem", problem_spec, "example1 | mtx:<path>:<c> | pde:<n0>")->required();
  analyze->add_option("--tol", power_tol, "Power iteration tolerance");
  analyze->add_option("--maxit", power_maxit, "Power iteration limit");

  std::string method = "gmres", prec = "pbs", alpha_text = "1", restart_text = "10";
  double tol = 1e-11;
  std::size_t maxit = 1000;
  auto* solve = app.add_subcommand("solve", "Solve with PBS iteration or preconditioned GMRES");
  solve->add_option("--problem", problem_spec)->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"pbs", "gmres"}));
  solve->add_option("--prec", prec)->check(CLI::IsMember({"pbs", "bs1", "bs2", "bs3", "none"}));
  solve->add_option("--alpha", alpha_text, "PBS parameter or 'opt'");
  solve->add_option("--restart", restart_text, "GMRES restart length or 'full'");
  solve->add_option("--tol", tol);
  solve->add_option("--maxit", maxit);

  std::string alphas_text;
  auto* sweep = app.add_subcommand("sweep", "Iteration counts of the PBS iteration over a list of alphas");
  sweep->add_option("--problem", problem_spec)->required();
  sweep->add_option("--alphas", alphas_text, "Comma-separated list; 'opt' is not accepted here")->required();
  sweep->add_option("--tol", tol);
  sweep->add_option("--maxit", maxit);

  int example = 1;
  std::string a1_path, format = "table";
  std::size_t n0 = 85;
  double shift = 6.0;
  auto* bench = app.add_subcommand("bench", "Reproduce the experiment tables");
  bench->add_option("--example", example)->check(CLI::IsMember({1, 2, 3}))->required();
  bench->add_option("--a1", a1_path, "Matrix Market file for A1 (example 2)");
  bench->add_option("--c", shift, "A2 = c I for example 2");
  bench->add_option("--n0", n0, "Grid size for example 3");
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*analyze) {
      const ils::IlsProblem problem = ils::parse_problem_spec(problem_spec);
      const ils::MuMaxResult mu = ils::mu_max(problem, power_tol, power_maxit);
      const ils::SpectralSummary s = ils::summarize(mu.value);
      std::cout << std::setprecision(6) << "problem      " << ils::problem_label(problem) << "\n"
                << "mu_max       " << s.mu_max << (mu.converged ? "" : "  (power iteration not converged)") << "\n"
                << "interval     (0, " << s.alpha_upper << ")\n"
                << "alpha_opt    " << s.alpha_opt << "\n"
                << "rho_opt      " << s.rho_opt << "\n";
      return mu.converged ? kConverged : kNotConverged;
    }

    if (*solve) {
      const ils::IlsProblem problem = ils::parse_problem_spec(problem_spec);
      const double alpha = resolve_alpha(alpha_text, problem);
      ils::SolveReport rep;
      std::optional<ils::Vector> x_ref;
      try {
        x_ref = ils::reference_solution(problem);
      } catch (const ils::Error&) {
      }
      if (method == "pbs") {
        const ils::SolveResult r = ils::pbs_iterate(problem, alpha, {.tol = tol, .maxit = maxit});
        rep = r.report;
        const ils::BlockOperator op(problem, ils::BlockKind::Augmented6);
        if (x_ref && ils::norm2(*x_ref) > 0.0) rep.rel_error = ils::rel_error(op.extract_x(r.solution), *x_ref);
      } else {
        const ils::GmresConfig config{.restart = parse_restart(restart_text), .tol = tol, .maxit = maxit};
        const ils::MethodRun run = ils::run_method(problem, ils::parse_method(prec, alpha), config);
        rep = run.gmres.report;
        if (x_ref && ils::norm2(*x_ref) > 0.0) rep.rel_error = ils::rel_error(run.x, *x_ref);
      }
      std::cout << "problem     " << ils::problem_label(problem) << "\n"
                << "alpha       " << alpha << "\n";
      print_report(rep);
      return rep.converged ? kConverged : kNotConverged;
    }

    if (*sweep) {
      const ils::IlsProblem problem = ils::parse_problem_spec(problem_spec);
      const ils::SweepResult r = ils::alpha_sweep(problem, parse_alpha_list(alphas_text), tol, maxit);
      std::cout << std::left << std::setw(12) << "alpha" << std::setw(8) << "iters" << "status\n";
      for (const auto& pt : r.points)
        std::cout << std::left << std::setw(12) << pt.alpha << std::setw(8) << pt.iterations
                  << ils::to_string(pt.status) << "\n";
      if (r.best_alpha) std::cout << "best alpha: " << *r.best_alpha << "\n";
      return r.best_alpha ? kConverged : kNotConverged;
    }

    if (*bench) {
      std::vector<ils::BenchRow> rows;
      if (example == 1) {
        const ils::IlsProblem problem = ils::gen_example1();
        const double opt = ils::analyze(problem).alpha_opt;
        const ils::Vector x_ref = ils::reference_solution(problem);
        const ils::BlockOperator op(problem, ils::BlockKind::Augmented6);
        for (double alpha : {0.7, 0.8, 1.0, opt, 1.4, 1.6, 1.8}) {
          const ils::SolveResult r = ils::pbs_iterate(problem, alpha);
          std::ostringstream label;
          label << "PBS-iter(alpha=" << std::setprecision(5) << alpha << ")";
          rows.push_back({ils::problem_label(problem), label.str(), r.report.iterations, r.report.wall_seconds,
                          r.report.final_rel_residual, ils::rel_error(op.extract_x(r.solution), x_ref),
                          r.report.converged});
        }
      } else {
        const std::vector<ils::MethodSpec> methods = {
            {ils::Method::Pbs, 1.0}, {ils::Method::Bs1}, {ils::Method::Bs2}, {ils::Method::Bs3}, {ils::Method::None}};
        ils::GmresConfig config;
        std::optional<ils::IlsProblem> problem;
        if (example == 2) {
          if (a1_path.empty()) {
            std::cerr << "bench --example 2 needs --a1 <path.mtx> (e.g. tols340.mtx)\n";
            return kUsage;
          }
          problem = ils::gen_identity_shifted(std::filesystem::path(a1_path), shift);
          config.restart = 10;
        } else {
          problem = ils::gen_pde_problem({.n0 = n0});
          config.restart.reset();
        }
        rows = ils::run_benchmark(*problem, methods, config);
      }
      if (format == "csv") {
        ils::write_csv(std::cout, rows);
      } else {
        ils::write_table(std::cout, rows);
      }
      // unpreconditioned runs are expected to stall; judge only preconditioned ones
      bool ok = true;
      for (const auto& r : rows)
        if (r.method != "No-Prec" && !r.converged) ok = false;
      return ok ? kConverged : kNotConverged;
    }
  } catch (const ils::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
