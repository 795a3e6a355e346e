#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ils/gmres.hpp"
#include "ils/pbs.hpp"
#include "ils/problem.hpp"

namespace ils {

/// Convection-diffusion-reaction test problem on the unit square:
///   -lap(u) + sin(x+y) u_x + cos(x-y) u_y + 50 (x+y) u,
/// central differences on an n0 x n0 interior grid with h = 1/(n0+1).
struct PdeSpec {
  std::size_t n0 = 20;
  double a2_scale = 0.7;
  bool convection = true;
  double reaction = 50.0;
};

[[nodiscard]] IlsProblem gen_example1();
/// A1 read from a Matrix Market file, A2 = c I, b1 = b2 = ones.
[[nodiscard]] IlsProblem gen_identity_shifted(const std::filesystem::path& path, double c);
[[nodiscard]] IlsProblem gen_identity_shifted(SparseMatrix a1, double c);
[[nodiscard]] SparseMatrix pde_matrix(const PdeSpec& spec);
[[nodiscard]] IlsProblem gen_pde_problem(const PdeSpec& spec);

struct SweepPoint {
  double alpha;
  std::size_t iterations;
  SolveStatus status;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Alpha with the fewest iterations among converged runs.
  std::optional<double> best_alpha;
};

[[nodiscard]] SweepResult alpha_sweep(const IlsProblem& problem, const std::vector<double>& alphas,
                                      double tol = 1e-11, std::size_t maxit = 1000);

enum class Method { Pbs, Bs1, Bs2, Bs3, None };

struct MethodSpec {
  Method method = Method::Pbs;
  double alpha = 1.0;
};

[[nodiscard]] std::string method_label(const MethodSpec& spec);
[[nodiscard]] MethodSpec parse_method(const std::string& text, double alpha = 1.0);

struct BenchRow {
  std::string problem;
  std::string method;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  double rel = 1.0;
  double err = 0.0;
  bool converged = false;
};

/// "m x n" label of a problem, from its true dimensions.
[[nodiscard]] std::string problem_label(const IlsProblem& problem);

struct MethodRun {
  GmresResult gmres;
  /// x block of the stacked solution.
  Vector x;
};

/// GMRES run of one method: PBS and unpreconditioned runs use Augmented6,
/// BS1-BS3 use XinMengB.
[[nodiscard]] MethodRun run_method(const IlsProblem& problem, const MethodSpec& spec, const GmresConfig& config);

/// One row per method, Err measured on the x block against x_ref (computed
/// from reference_solution when not supplied). Failures become unconverged rows.
[[nodiscard]] std::vector<BenchRow> run_benchmark(const IlsProblem& problem, const std::vector<MethodSpec>& methods,
                                                  const GmresConfig& config,
                                                  const std::optional<Vector>& x_ref = std::nullopt);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_table(std::ostream& out, const std::vector<BenchRow>& rows);

/// Problem spec grammar: `example1`, `mtx:<path>:<c>`, `pde:<n0>`.
[[nodiscard]] IlsProblem parse_problem_spec(const std::string& spec);

}  // namespace ils
