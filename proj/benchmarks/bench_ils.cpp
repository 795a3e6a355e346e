#include <benchmark/benchmark.h>

#include <map>

#include "ils/block_operator.hpp"
#include "ils/cholesky.hpp"
#include "ils/experiments.hpp"
#include "ils/gmres.hpp"
#include "ils/pbs.hpp"
#include "ils/spectral.hpp"

namespace {

using namespace ils;

const IlsProblem& pde(std::size_t n0) {
  static std::map<std::size_t, IlsProblem> cache;
  auto it = cache.find(n0);
  if (it == cache.end()) it = cache.emplace(n0, gen_pde_problem({.n0 = n0})).first;
  return it->second;
}

void BM_OperatorApply(benchmark::State& state) {
  const IlsProblem& pr = pde(static_cast<std::size_t>(state.range(0)));
  const BlockOperator op(pr, BlockKind::Augmented6);
  const Vector x(op.dim(), 1.0);
  Vector y(op.dim());
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_OperatorApply)->Arg(20)->Arg(50)->Arg(85);

void BM_ApplyPbs(benchmark::State& state) {
  const IlsProblem& pr = pde(static_cast<std::size_t>(state.range(0)));
  const PbsPreconditioner prec(pr, 1.0);
  const Vector w(prec.dim(), 1.0);
  Vector z(prec.dim());
  for (auto _ : state) {
    prec.apply(w, z);
    benchmark::DoNotOptimize(z.data());
  }
}
BENCHMARK(BM_ApplyPbs)->Arg(20)->Arg(50)->Arg(85);

void BM_CholeskyFactor(benchmark::State& state) {
  const SparseMatrix p = gram(pde_matrix({.n0 = static_cast<std::size_t>(state.range(0))}));
  const CholeskyOptions opts{.dense_threshold = static_cast<std::size_t>(state.range(1))};
  for (auto _ : state) {
    CholeskyFactor f = cholesky_factor(p, opts);
    benchmark::DoNotOptimize(f);
  }
  state.SetLabel(state.range(1) == 0 ? "sparse" : "dense");
}
BENCHMARK(BM_CholeskyFactor)->Args({20, 0})->Args({20, 2048})->Args({40, 0})->Args({40, 2048})->Args({85, 0})
    ->Unit(benchmark::kMillisecond);

void BM_MuMax(benchmark::State& state) {
  const IlsProblem& pr = pde(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mu_max(pr).value);
}
BENCHMARK(BM_MuMax)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_GmresFull(benchmark::State& state) {
  const IlsProblem& pr = pde(static_cast<std::size_t>(state.range(0)));
  const auto method = static_cast<Method>(state.range(1));
  std::size_t iterations = 0;
  for (auto _ : state) {
    const MethodRun run = run_method(pr, {method, 1.0}, {.restart = std::nullopt});
    iterations = run.gmres.report.iterations;
  }
  state.counters["iterations"] = static_cast<double>(iterations);
  state.SetLabel(method_label({method, 1.0}));
}
BENCHMARK(BM_GmresFull)
    ->ArgsProduct({{20, 50, 85},
                   {static_cast<long>(Method::Pbs), static_cast<long>(Method::Bs1), static_cast<long>(Method::Bs2),
                    static_cast<long>(Method::Bs3)}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
