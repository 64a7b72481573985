#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "csgd/estimator.hpp"
#include "csgd/problem.hpp"
#include "csgd/rng.hpp"
#include "doctest.h"

using namespace csgd;

namespace {

Eigen::VectorXd random_point(const GraphProblem& problem, std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  Eigen::VectorXd w(problem.dim());
  for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
  return w;
}

}  // namespace

TEST_CASE("estimator: exact mode returns the full gradient bitwise") {
  const auto problem = make_problem(ProblemKind::kConvex, 30, 0.3, 5, 0, 1);
  const auto w = random_point(problem, 1);
  EstimatorSpec spec;  // exact
  const auto sample = estimate_gradient(spec, problem, w, 99);
  CHECK(sample.g == problem.gradient(w));
}

TEST_CASE("estimator: layered draw has the right shape and is finite") {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = random_point(problem, 2);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 1, 0, false};
  const auto sample = estimate_gradient(spec, problem, w, 5);
  REQUIRE(sample.g.size() == 10);
  CHECK(sample.g.allFinite());
  CHECK(sample.n1 == 30);
  CHECK(sample.n2 == 1);
}

TEST_CASE("estimator: draws are deterministic in the seed") {
  const auto problem = make_problem(ProblemKind::kNonconvex, 50, 0.3, 4, 3, 2);
  const auto w = random_point(problem, 3);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 10, 10, 5, false};
  const auto a = estimate_gradient(spec, problem, w, 7);
  const auto b = estimate_gradient(spec, problem, w, 7);
  const auto c = estimate_gradient(spec, problem, w, 8);
  CHECK(a.g == b.g);
  CHECK(a.g != c.g);
}

TEST_CASE("estimator: sample counts exceeding n are rejected") {
  const auto problem = make_problem(ProblemKind::kConvex, 10, 0.3, 4, 0, 3);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 11, 1, 0, false};
  CHECK_THROWS_AS(spec.validate(problem), std::invalid_argument);
  EstimatorSpec zero{EstimatorMode::kLayeredConsistent, 0, 1, 0, false};
  CHECK_THROWS_AS(zero.validate(problem), std::invalid_argument);
}

TEST_CASE("estimator: minibatch expectation equals the full gradient on n=4") {
  const auto problem = make_problem(ProblemKind::kConvex, 4, 0.5, 3, 0, 4);
  const auto w = random_point(problem, 5);
  // Average the four possible singleton output draws by hand.
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(problem.dim());
  const std::array<int, 4> all = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    const std::array<int, 1> out = {i};
    mean += layered_gradient(problem, w, all, out);
  }
  mean /= 4.0;
  CHECK((mean - problem.gradient(w)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("estimator: MSE of the exact mode is exactly zero") {
  const auto problem = make_problem(ProblemKind::kConvex, 20, 0.3, 4, 0, 6);
  const auto w = random_point(problem, 7);
  EstimatorSpec spec;  // exact
  CHECK(estimator_mse(spec, problem, w, 10, 1) == 0.0);
}

TEST_CASE("estimator: full layer counts recover the exact gradient") {
  SUBCASE("convex") {
    const auto problem = make_problem(ProblemKind::kConvex, 50, 0.3, 5, 0, 8);
    const auto w = random_point(problem, 9);
    EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 50, 50, 0, false};
    CHECK(estimator_mse(spec, problem, w, 5, 2) == 0.0);
  }
  SUBCASE("nonconvex") {
    const auto problem = make_problem(ProblemKind::kNonconvex, 20, 0.3, 4, 3, 8);
    const auto w = random_point(problem, 9);
    EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 20, 20, 20, false};
    CHECK(estimator_mse(spec, problem, w, 5, 2) == 0.0);
  }
}

TEST_CASE("estimator: MSE shrinks as the input layer grows") {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = random_point(problem, 10);
  double prev = -1.0;
  bool first = true;
  for (int n1 : {10, 30, 100, 300}) {
    EstimatorSpec spec{EstimatorMode::kLayeredConsistent, n1, 300, 0, false};
    const double mse = estimator_mse(spec, problem, w, 400, 3);
    if (!first) CHECK(mse < prev);
    prev = mse;
    first = false;
  }
  CHECK(prev == 0.0);  // n1 = n is the exact sum
}

TEST_CASE("estimator: tail of the exact mode never exceeds the threshold") {
  const auto problem = make_problem(ProblemKind::kConvex, 30, 0.3, 5, 0, 11);
  const auto w = random_point(problem, 12);
  EstimatorSpec spec;  // exact
  const std::vector<int> grid = {10, 20};
  const auto tail = empirical_tail(spec, problem, w, 0.1, grid, 50, 4);
  for (const auto& pt : tail.points) CHECK(pt.p_hat == 0.0);
  CHECK_FALSE(tail.fit_ok);
  CHECK(tail.tau_hat == 0.0);
}

TEST_CASE("estimator: tail probability is nonincreasing in the sample size") {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = random_point(problem, 13);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 300, 0, false};
  const std::vector<int> grid = {10, 30, 100};
  const auto tail = empirical_tail(spec, problem, w, 0.5, grid, 1000, 5);
  REQUIRE(tail.points.size() == 3);
  for (std::size_t i = 1; i < tail.points.size(); ++i) {
    const double p0 = tail.points[i - 1].p_hat;
    const double p1 = tail.points[i].p_hat;
    // Monte Carlo slack: two binomial standard errors on each estimate.
    const auto se = [&](double p) { return std::sqrt(p * (1 - p) / 1000.0); };
    CHECK(p1 <= p0 + 2.0 * (se(p0) + se(p1)));
  }
}

TEST_CASE("estimator: tail estimates are reproducible bit-exactly") {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto w = random_point(problem, 14);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 30, 300, 0, false};
  const std::vector<int> grid = {30};
  const auto a = empirical_tail(spec, problem, w, 0.25, grid, 2000, 6);
  const auto b = empirical_tail(spec, problem, w, 0.25, grid, 2000, 6);
  REQUIRE(a.points.size() == 1);
  CHECK(a.points[0].p_hat >= 0.0);
  CHECK(a.points[0].p_hat <= 1.0);
  CHECK(a.points[0].p_hat == b.points[0].p_hat);
  CHECK(a.tau_hat == b.tau_hat);
}

TEST_CASE("estimator: tail at a zero-gradient point is rejected") {
  // A = 0 annihilates the forward map, so grad f(0) is exactly zero.
  GroundTruth gt;
  gt.w_star = Eigen::VectorXd::Zero(3);
  gt.y = Eigen::VectorXd::Zero(8);
  const GraphProblem problem(ProblemKind::kConvex, Eigen::MatrixXd::Zero(8, 8),
                             Eigen::MatrixXd::Random(8, 3), gt);
  EstimatorSpec spec{EstimatorMode::kLayeredConsistent, 4, 8, 0, false};
  const std::vector<int> grid = {4};
  CHECK_THROWS_AS(empirical_tail(spec, problem, Eigen::VectorXd::Zero(3), 0.25,
                                 grid, 10, 7),
                  std::invalid_argument);
}
