// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <memory>

#include "treepot/montecarlo.hpp"
#include "treepot/potential.hpp"
#include "treepot/walk.hpp"

using namespace treepot;

namespace {

std::shared_ptr<const TreeModel> seeded_tree() {
  TreeSpec s;
  s.kind = TreeKind::seeded_random;
  s.kernel = KernelRule::seeded_random;
  s.d_min = 3;
  s.d_max = 4;
  s.epsilon = 0.15;
  s.eta = 0.1;
  s.seed = 1;
  return std::make_shared<const TreeModel>(s);
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_EdgeSweep(benchmark::State& state) {
  const auto t = seeded_tree();
  auto index = std::make_shared<const SubtreeIndex>(SubtreeIndex::ball(*t, 11, 1u << 24));
  EdgeSolver solver(t, index, [](const VertexId&) { return true; }, false);
  for (auto _ : state) benchmark::DoNotOptimize(solver.sweep(mode(state)));
  state.counters["vertices"] = static_cast<double>(index->size());
}
BENCHMARK(BM_EdgeSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolvePotential(benchmark::State& state) {
  const auto t = seeded_tree();
  SolverOptions o;
  o.execution = mode(state);
  for (auto _ : state) {
    const PotentialTable table = solve_potential(t, 10, o);
    benchmark::DoNotOptimize(table.stats().sweeps);
  }
}
BENCHMARK(BM_SolvePotential)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PlainWalks(benchmark::State& state) {
  const auto t = seeded_tree();
  const RngPlan plan{7};
  for (auto _ : state) {
    const auto depths = map_streams(plan, 2000, mode(state), [&](RngStream& rng, std::size_t) {
      VertexId x;
      run_plain(*t, x, 400, rng, [](std::size_t, const VertexId&) { return Control::proceed; });
      return static_cast<double>(x.depth());
    });
    benchmark::DoNotOptimize(depths.data());
  }
}
BENCHMARK(BM_PlainWalks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConditionedWalks(benchmark::State& state) {
  const auto t = std::make_shared<const TreeModel>(TreeSpec{});
  auto table = std::make_shared<const PotentialTable>(solve_potential(t, 300));
  const MartinKernel k(table, BoundaryRay());
  const std::size_t cert = table->certified_depth(1e-9);
  const RngPlan plan{8};
  for (auto _ : state) {
    const auto depths = map_streams(plan, 20000, mode(state), [&](RngStream& rng, std::size_t) {
      VertexId x;
      run_conditioned(k, x, 400, rng, cert, [](std::size_t, const VertexId&) { return Control::proceed; });
      return static_cast<double>(x.depth());
    });
    benchmark::DoNotOptimize(depths.data());
  }
}
BENCHMARK(BM_ConditionedWalks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
