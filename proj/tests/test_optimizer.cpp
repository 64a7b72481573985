#include <cmath>
#include <stdexcept>

#include "csgd/optimizer.hpp"
#include "csgd/problem.hpp"
#include "csgd/rng.hpp"
#include "doctest.h"

using namespace csgd;

TEST_CASE("optimizer: step-size rules substitute correctly") {
  StepSchedule s;
  s.rule = StepRule::kInverseLk;
  s.l = 0.5;
  CHECK(step_size(s, 4) == 0.5);  // 1 / (0.5 * 4)

  s.rule = StepRule::kInverseSqrt;
  s.c = 2.0;
  CHECK(step_size(s, 4) == 1.0);  // 2 / sqrt(4)

  s.rule = StepRule::kConstantNonconvex;
  s.d_f = 3.0;
  s.g = 1.5;
  s.horizon = 4;
  CHECK(step_size(s, 1) == 1.0);  // 3 / (1.5 * 2)

  s.rule = StepRule::kConstant;
  s.gamma = 0.01;
  CHECK(step_size(s, 123) == 0.01);

  s.rule = StepRule::kHighProbConstantNonconvex;
  s.delta = 0.5;  // shrinks the constant step by 1/(1 + delta)
  CHECK(step_size(s, 1) ==
        doctest::Approx(1.0 / 1.5).epsilon(1e-15));
}

TEST_CASE("optimizer: high-probability schedule reduces at rho = 0") {
  StepSchedule a, b;
  a.rule = StepRule::kInverseLk;
  a.l = 0.37;
  b.rule = StepRule::kHighProbInverseLk;
  b.l = 0.37;
  b.rho = 0.0;
  b.horizon = 100;
  for (int k = 1; k <= 50; ++k) {
    CHECK(step_size(a, k) == step_size(b, k));
  }
}

TEST_CASE("optimizer: degenerate high-probability modulus is rejected") {
  StepSchedule s;
  s.rule = StepRule::kHighProbInverseLk;
  s.l = 0.01;
  s.rho = 2.0;
  s.horizon = 100;  // l - rho/T = -0.01
  CHECK_THROWS_AS(step_size(s, 1), std::invalid_argument);
}

TEST_CASE("optimizer: ball projection") {
  const auto region = FeasibleRegion::ball(2.0);
  Eigen::VectorXd inside(2);
  inside << 1.0, 0.5;
  CHECK(project(inside, region) == inside);

  Eigen::VectorXd outside(2);
  outside << 4.0, 0.0;  // norm = 2 * radius
  const Eigen::VectorXd projected = project(outside, region);
  CHECK(projected == outside / 2.0);

  CHECK(project(outside, FeasibleRegion::unconstrained()) == outside);
}

TEST_CASE("optimizer: projection is nonexpanding over random pairs") {
  const auto region = FeasibleRegion::ball(1.5);
  CounterRng rng(4, stream::kVerify);
  for (int t = 0; t < 2000; ++t) {
    Eigen::VectorXd w(6), u(6);
    for (int i = 0; i < 6; ++i) {
      w[i] = 3.0 * rng.normal();
      u[i] = 3.0 * rng.normal();
    }
    CHECK((project(w, region) - project(u, region)).norm() <=
          (w - u).norm() + 1e-12);
  }
}

TEST_CASE("optimizer: zero gradient source fixes the iterate") {
  const auto problem = make_problem(ProblemKind::kConvex, 30, 0.3, 5, 0, 1);
  StepSchedule s;
  s.rule = StepRule::kConstant;
  s.gamma = 0.1;
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, 1);
  const GradientSource zero = [&](const Eigen::VectorXd&, int) {
    return Eigen::VectorXd::Zero(problem.dim()).eval();
  };
  const auto trace = run_sgd(problem, zero, s, region, 50, w1);
  CHECK(trace.w_final == w1);
  for (const auto& row : trace.rows) {
    CHECK(row.dist_sq == trace.rows.front().dist_sq);
  }
}

TEST_CASE("optimizer: trace bookkeeping invariants") {
  const auto problem = make_problem(ProblemKind::kConvex, 100, 0.3, 8, 0, 2);
  const auto cc = curvature_constants(problem);
  StepSchedule s;
  s.rule = StepRule::kInverseLk;
  s.l = *cc.l;
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, 2);
  EstimatorSpec spec;  // exact
  RunOptions options;
  options.iterate_stride = 10;
  const int T = 100;
  const auto trace = run_sgd(problem, spec, s, region, T, w1, 2, options);

  REQUIRE(trace.rows.size() == static_cast<std::size_t>(T));
  double min_so_far = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= T; ++k) {
    const auto& row = trace.rows[static_cast<std::size_t>(k - 1)];
    CHECK(row.k == k);
    CHECK(std::isfinite(row.f_gap));
    min_so_far = std::min(min_so_far, row.grad_norm_sq);
    CHECK(row.min_grad_norm_sq == min_so_far);
  }

  // The stored k = T iterate must be the reported final iterate.
  bool saw_final = false;
  for (const auto& [k, w] : trace.stored_iterates) {
    if (k == T) {
      CHECK(w == trace.w_final);
      saw_final = true;
    }
  }
  CHECK(saw_final);
}

TEST_CASE("optimizer: running average matches a full recomputation") {
  const auto problem = make_problem(ProblemKind::kConvex, 50, 0.3, 5, 0, 3);
  StepSchedule s;
  s.rule = StepRule::kConstant;
  s.gamma = 0.05;
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, 3);
  EstimatorSpec spec;  // exact
  RunOptions options;
  options.iterate_stride = 1;  // store every iterate
  const int T = 40;
  const auto trace = run_sgd(problem, spec, s, region, T, w1, 3, options);
  REQUIRE(trace.stored_iterates.size() == static_cast<std::size_t>(T));
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(problem.dim());
  for (const auto& [k, w] : trace.stored_iterates) mean += w;
  mean /= static_cast<double>(T);
  CHECK((mean - trace.w_avg_final).norm() <= 1e-10);
}

TEST_CASE("optimizer: iterates respect the ball constraint") {
  const auto problem = make_problem(ProblemKind::kConvex, 50, 0.3, 5, 0, 4);
  StepSchedule s;
  s.rule = StepRule::kConstant;
  s.gamma = 1000.0;  // force projections
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, 4);
  EstimatorSpec spec;
  RunOptions options;
  options.iterate_stride = 1;
  const auto trace = run_sgd(problem, spec, s, region, 50, w1, 4, options);
  bool any_active = false;
  for (const auto& [k, w] : trace.stored_iterates) {
    CHECK(w.norm() <= problem.radius() + 1e-9);
  }
  for (const auto& row : trace.rows) any_active |= row.proj_active;
  CHECK(any_active);
}

TEST_CASE("optimizer: runs are deterministic in the seed") {
  const auto problem = make_problem(ProblemKind::kConvex, 100, 0.3, 8, 0, 5);
  const auto cc = curvature_constants(problem);
  StepSchedule s;
  s.rule = StepRule::kInverseLk;
  s.l = 20.0 * *cc.l;  // 1/(20 l k)
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, 5);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 10, 1, 0, false};
  const auto a = run_sgd(problem, spec, s, region, 200, w1, 5);
  const auto b = run_sgd(problem, spec, s, region, 200, w1, 5);
  CHECK(a.w_final == b.w_final);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].dist_sq == b.rows[i].dist_sq);
  }
}

TEST_CASE("optimizer: initial iterate is drawn then projected") {
  const auto problem = make_problem(ProblemKind::kConvex, 30, 0.3, 5, 0, 6);
  const auto region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd a = initial_iterate(problem, region, 7);
  const Eigen::VectorXd b = initial_iterate(problem, region, 7);
  CHECK(a == b);
  CHECK(a.norm() <= problem.radius() + 1e-12);
  const Eigen::VectorXd c = initial_iterate(problem, region, 8);
  CHECK(a != c);
}
