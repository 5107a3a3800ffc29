#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rgsw/solver.hpp"
#include "rgsw/spectral.hpp"

using namespace rgsw;

namespace {

PhysParams steep() { return PhysParams(10 * std::cos(std::numbers::pi / 6), 5.0, 0.05, 0.04); }

std::vector<Vec4> random_cells(std::size_t n, const PhysParams& p) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> h(0.8, 1.2), u(9.0, 11.0), s(0.0, 0.3);
  std::vector<Vec4> cells;
  cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) cells.push_back(to_conserved(PrimitiveState(h(rng), u(rng), s(rng), s(rng)), p).q);
  return cells;
}

template <Parallelism Par>
void BM_HyperbolicRhs(benchmark::State& state) {
  const auto p = steep();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D g(0.0, 100.0, n);
  const auto cells = random_cells(n, p);
  kernels::Workspace ws;
  std::vector<Vec4> rhs;
  for (auto _ : state) {
    if constexpr (Par == Parallelism::openmp)
      kernels::omp::hyperbolic_rhs(cells, g, p, FluxKind::hll, ws, rhs);
    else
      kernels::serial::hyperbolic_rhs(cells, g, p, FluxKind::hll, ws, rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Parallelism Par>
void BM_SourceHalfStep(benchmark::State& state) {
  const auto p = steep();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = random_cells(n, p);
  auto cells = base;
  for (auto _ : state) {
    cells = base;
    if constexpr (Par == Parallelism::openmp)
      kernels::omp::source_half_step(cells, 1e-3, p, SolverOptions{});
    else
      kernels::serial::source_half_step(cells, 1e-3, p, SolverOptions{});
    benchmark::DoNotOptimize(cells.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Parallelism Par>
void BM_Step(benchmark::State& state) {
  const auto p = steep();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D g(0.0, 100.0, n);
  const auto base = random_cells(n, p);
  SolverOptions opt;
  opt.parallelism = Par;
  const double dt = stable_dt(base, g, p, opt);
  kernels::Workspace ws;
  Diagnostics d;
  auto cells = base;
  for (auto _ : state) {
    cells = base;
    step(cells, g, dt, p, opt, ws, d);
    benchmark::DoNotOptimize(cells.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ContourCount(benchmark::State& state) {
  const PhysParams p(10 * std::cos(std::numbers::pi / 10), 10 * std::sin(std::numbers::pi / 10), 1.0, 0.9);
  const auto prof = construct_single_jump(1.0, equilibrium_speed(1.0, p), 0.2, 0.5, 0.0, p, Domain{-100.0, 5.0, 4000});
  ContourSpec spec;
  spec.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(count_unstable(prof, spec));
  state.SetLabel(spec.parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_HyperbolicRhs<Parallelism::serial>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_HyperbolicRhs<Parallelism::openmp>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SourceHalfStep<Parallelism::serial>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SourceHalfStep<Parallelism::openmp>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_Step<Parallelism::serial>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_Step<Parallelism::openmp>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ContourCount)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
