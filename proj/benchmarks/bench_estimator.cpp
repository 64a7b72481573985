#include <benchmark/benchmark.h>

#include "csgd/estimator.hpp"
#include "csgd/problem.hpp"
#include "csgd/rng.hpp"

namespace {

using namespace csgd;

Eigen::VectorXd bench_point(const GraphProblem& problem) {
  CounterRng rng(1, stream::kVerify);
  Eigen::VectorXd w(problem.dim());
  for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
  return w;
}

void BM_ExactGradientConvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = bench_point(problem);
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.gradient(w));
  }
}
BENCHMARK(BM_ExactGradientConvex);

void BM_ExactGradientNonconvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kNonconvex, 300, 0.3, 10, 5, 1);
  const auto w = bench_point(problem);
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.gradient(w));
  }
}
BENCHMARK(BM_ExactGradientNonconvex);

void BM_LayeredDrawConvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = bench_point(problem);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent,
                     static_cast<int>(state.range(0)), 1, 0, false};
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_gradient(spec, problem, w, draw++));
  }
}
BENCHMARK(BM_LayeredDrawConvex)->Arg(10)->Arg(30)->Arg(100)->Arg(300);

void BM_LayeredDrawNonconvex(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kNonconvex, 300, 0.3, 10, 5, 1);
  const auto w = bench_point(problem);
  const int m = static_cast<int>(state.range(0));
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, m, m, 1, false};
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_gradient(spec, problem, w, draw++));
  }
}
BENCHMARK(BM_LayeredDrawNonconvex)->Arg(10)->Arg(30)->Arg(100);

void BM_EstimatorMse(benchmark::State& state) {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = bench_point(problem);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 300, 0, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimator_mse(spec, problem, w, 100, 1));
  }
}
BENCHMARK(BM_EstimatorMse);

}  // namespace
