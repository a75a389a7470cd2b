// Serial reference vs OpenMP variant of each data-parallel kernel.
// Thread count follows SPECRIG_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dense_eval.hpp"
#include "specrig/famdyn.hpp"
#include "specrig/kernels.hpp"
#include "specrig/rootfind.hpp"

using namespace specrig;

namespace {

std::vector<Complex> random_coeffs(int degree) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return c;
}

template <Exec E>
void BM_AberthSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto coeffs = random_coeffs(n);
  const DensePolyEval eval(coeffs);
  const std::vector<Complex> z = circle_start(n, 1.0, 0);
  const std::vector<std::uint8_t> active(z.size(), 1);
  std::vector<Complex> corr(z.size());
  std::vector<std::uint8_t> zero(z.size());
  for (auto _ : state) {
    kernels::aberth_corrections<Complex>(E, eval, z, active, corr, zero);
    benchmark::DoNotOptimize(corr.data());
  }
  state.SetComplexityN(n);
}

template <Exec E>
void BM_GreenGrid(benchmark::State& state) {
  const FamilySpec F = unicritical_family(2);
  const MarkedPoint& crit = F.marked_point("critical");
  const int res = static_cast<int>(state.range(0));
  const GridWindow w{-2.5, 1.0, -1.75, 1.75, res, res};
  for (auto _ : state) benchmark::DoNotOptimize(bifurcation_grid(F, crit, w, 200, E).total_mass);
  state.SetItemsProcessed(state.iterations() * w.cells());
}

template <Exec E>
void BM_Laplacian(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  const GridWindow w{-1, 1, -1, 1, res, res};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u;
  std::vector<double> g(w.cells()), lap(w.cells());
  for (auto& x : g) x = u(rng);
  for (auto _ : state) {
    kernels::laplacian(E, w, g, lap);
    benchmark::DoNotOptimize(lap.data());
  }
  state.SetItemsProcessed(state.iterations() * w.cells());
}

}  // namespace

BENCHMARK_TEMPLATE(BM_AberthSweep, Exec::Serial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK_TEMPLATE(BM_AberthSweep, Exec::Parallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK_TEMPLATE(BM_GreenGrid, Exec::Serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_GreenGrid, Exec::Parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Laplacian, Exec::Serial)->Arg(512)->Arg(2048);
BENCHMARK_TEMPLATE(BM_Laplacian, Exec::Parallel)->Arg(512)->Arg(2048);

BENCHMARK_MAIN();
