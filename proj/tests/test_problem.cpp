#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "csgd/problem.hpp"
#include "csgd/rng.hpp"
#include "doctest.h"

using namespace csgd;

namespace {

Eigen::VectorXd random_point(const GraphProblem& problem, std::uint64_t seed,
                             double scale = 1.0) {
  CounterRng rng(seed, stream::kVerify);
  Eigen::VectorXd w(problem.dim());
  for (int i = 0; i < w.size(); ++i) w[i] = scale * rng.normal();
  return w;
}

}  // namespace

TEST_CASE("problem: objective vanishes at the planted optimum") {
  for (auto kind : {ProblemKind::kConvex, ProblemKind::kNonconvex}) {
    const auto problem = make_problem(kind, 50, 0.3, 6, 5, 1);
    CHECK(problem.objective(problem.w_star()) <= 1e-12);
    CHECK(problem.f_star() == 0.0);
  }
}

TEST_CASE("problem: scalar one-node instance evaluates to the quadratic") {
  // AX = [1], y = [0], w = [2]  ->  f = (1*2 - 0)^2 / (2*1) = 2.
  Eigen::MatrixXd A(1, 1), X(1, 1);
  A << 1.0;
  X << 1.0;
  GroundTruth gt;
  gt.w_star = Eigen::VectorXd::Zero(1);
  gt.y = Eigen::VectorXd::Zero(1);
  const GraphProblem problem(ProblemKind::kConvex, A, X, gt);
  Eigen::VectorXd w(1);
  w << 2.0;
  CHECK(problem.objective(w) == 2.0);
}

TEST_CASE("problem: objective matches a scalar-loop reimplementation") {
  const auto problem = make_problem(ProblemKind::kConvex, 4, 0.5, 3, 0, 2);
  const auto w = random_point(problem, 10);
  // Elementwise, no matrix algebra.
  const int n = problem.n();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      double xw = 0.0;
      for (int c = 0; c < problem.d(); ++c) xw += problem.X()(j, c) * w[c];
      row += problem.A()(i, j) * xw;
    }
    const double r = row - problem.y()[i];
    acc += r * r;
  }
  CHECK(problem.objective(w) ==
        doctest::Approx(acc / (2.0 * n)).epsilon(1e-12));
}

TEST_CASE("problem: nonconvex objective matches a scalar-loop reimplementation") {
  const auto problem = make_problem(ProblemKind::kNonconvex, 4, 0.5, 3, 2, 2);
  const auto w = random_point(problem, 11);
  const int n = problem.n(), d = problem.d(), d2 = problem.d2();
  // H = sigma(A X W1), out = A H W2, elementwise.
  std::vector<std::vector<double>> ax(n, std::vector<double>(d, 0.0));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c)
      for (int j = 0; j < n; ++j) ax[i][c] += problem.A()(i, j) * problem.X()(j, c);
  std::vector<std::vector<double>> h(n, std::vector<double>(d2, 0.0));
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < d2; ++q) {
      double z = 0.0;
      for (int c = 0; c < d; ++c) z += ax[i][c] * w[q * d + c];  // vec(W1)
      h[i][q] = sigmoid(z);
    }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double out = 0.0;
    for (int j = 0; j < n; ++j)
      for (int q = 0; q < d2; ++q)
        out += problem.A()(i, j) * h[j][q] * w[d * d2 + q];
    const double r = out - problem.y()[i];
    acc += r * r;
  }
  CHECK(problem.objective(w) ==
        doctest::Approx(acc / (2.0 * n)).epsilon(1e-12));
}

TEST_CASE("problem: gradient vanishes at the planted optimum") {
  for (auto kind : {ProblemKind::kConvex, ProblemKind::kNonconvex}) {
    const auto problem = make_problem(kind, 50, 0.3, 6, 5, 3);
    CHECK(problem.gradient(problem.w_star()).norm() <= 1e-10);
  }
}

TEST_CASE("problem: convex gradient is affine in w") {
  const auto problem = make_problem(ProblemKind::kConvex, 30, 0.3, 5, 0, 4);
  const auto w1 = random_point(problem, 20);
  const auto w2 = random_point(problem, 21);
  const Eigen::VectorXd lhs = problem.gradient(w1 + w2) +
                              problem.gradient(Eigen::VectorXd::Zero(5));
  const Eigen::VectorXd rhs = problem.gradient(w1) + problem.gradient(w2);
  CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
}

TEST_CASE("problem: dimension mismatch is rejected") {
  const auto problem = make_problem(ProblemKind::kConvex, 10, 0.3, 4, 0, 5);
  CHECK_THROWS_AS(problem.objective(Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem.gradient(Eigen::VectorXd::Zero(5)),
                  std::invalid_argument);
}

TEST_CASE("problem: ball radius follows the problem kind") {
  const auto convex = make_problem(ProblemKind::kConvex, 20, 0.3, 10, 0, 6);
  CHECK(convex.radius() == 100.0 * 10);
  const auto nonconvex = make_problem(ProblemKind::kNonconvex, 20, 0.3, 10, 5, 6);
  CHECK(nonconvex.radius() == 100.0 * 11 * 5);
  CHECK(convex.w_star().norm() <= convex.radius());
  CHECK(nonconvex.w_star().norm() <= nonconvex.radius());
}

TEST_CASE("problem: curvature constants from unit singular values") {
  // A = I, X = I  ->  AX = I, so l = L = 1/n.
  const int n = 7;
  GroundTruth gt;
  gt.w_star = Eigen::VectorXd::Zero(n);
  gt.y = Eigen::VectorXd::Zero(n);
  const GraphProblem problem(ProblemKind::kConvex,
                             Eigen::MatrixXd::Identity(n, n),
                             Eigen::MatrixXd::Identity(n, n), gt);
  const auto cc = curvature_constants(problem);
  REQUIRE(cc.l.has_value());
  CHECK(*cc.l == doctest::Approx(1.0 / n).epsilon(1e-14));
  CHECK(cc.L == doctest::Approx(1.0 / n).epsilon(1e-14));
}

TEST_CASE("problem: default instance has 0 < l <= L") {
  const auto problem = make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, 1);
  const auto cc = curvature_constants(problem);
  REQUIRE(cc.l.has_value());
  CHECK(*cc.l > 0.0);
  CHECK(*cc.l <= cc.L);
}

TEST_CASE("problem: Hessian eigenvalues lie in [l, L]") {
  const auto problem = make_problem(ProblemKind::kConvex, 5, 0.5, 3, 0, 7);
  const auto cc = curvature_constants(problem);
  REQUIRE(cc.l.has_value());
  const Eigen::MatrixXd hessian =
      problem.AX().transpose() * problem.AX() / problem.n();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian);
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    const double ev = eig.eigenvalues()[i];
    CHECK(ev >= *cc.l - 1e-12);
    CHECK(ev <= cc.L + 1e-12);
  }
}

TEST_CASE("problem: curvature constants are undefined for the nonconvex kind") {
  const auto problem = make_problem(ProblemKind::kNonconvex, 10, 0.3, 4, 3, 8);
  CHECK_THROWS_AS(curvature_constants(problem), std::invalid_argument);
}

TEST_CASE("problem: estimated smoothness bounds observed gradient ratios") {
  const auto problem = make_problem(ProblemKind::kNonconvex, 30, 0.3, 4, 3, 9);
  const double L_hat = estimate_smoothness(problem, 2000, 1);
  CHECK(L_hat > 0.0);
  // Fresh pairs (different seed) must not exceed the inflated estimate.
  CounterRng rng(77, stream::kVerify);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd w(problem.dim()), u(problem.dim());
    for (int j = 0; j < w.size(); ++j) w[j] = rng.normal();
    for (int j = 0; j < u.size(); ++j) u[j] = rng.normal();
    const double num = (problem.gradient(w) - problem.gradient(u)).norm();
    CHECK(num <= L_hat * (w - u).norm() * (1.0 + 1e-9));
  }
}
