#include <benchmark/benchmark.h>

#include "csgd/optimizer.hpp"
#include "csgd/problem.hpp"

namespace {

using namespace csgd;

void BM_SgdExactConvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto cc = curvature_constants(problem);
  StepSchedule schedule;
  schedule.rule = StepRule::kInverseLk;
  schedule.l = cc.l.value();
  const auto region = FeasibleRegion::ball(problem.radius());
  const auto w1 = initial_iterate(problem, region, 1);
  EstimatorSpec spec;  // exact
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_sgd(problem, spec, schedule, region, T, w1, 1));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SgdExactConvex)->Arg(100)->Arg(1000);

void BM_SgdLayeredConvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto cc = curvature_constants(problem);
  StepSchedule schedule;
  schedule.rule = StepRule::kInverseLk;
  schedule.l = cc.l.value();
  schedule.lk_scale = 20.0;
  const auto region = FeasibleRegion::ball(problem.radius());
  const auto w1 = initial_iterate(problem, region, 1);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 1, 0, false};
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_sgd(problem, spec, schedule, region, T, w1, 1));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SgdLayeredConvex)->Arg(100)->Arg(1000);

void BM_SgdLayeredNonconvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kNonconvex, 300, 0.3, 10, 5, 1);
  StepSchedule schedule;
  schedule.rule = StepRule::kConstant;
  schedule.gamma = 0.01;
  const auto region = FeasibleRegion::ball(problem.radius());
  const auto w1 = initial_iterate(problem, region, 1);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 30, 1, false};
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_sgd(problem, spec, schedule, region, T, w1, 1));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_SgdLayeredNonconvex)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
