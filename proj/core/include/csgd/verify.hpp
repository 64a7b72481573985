#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csgd/estimator.hpp"
#include "csgd/problem.hpp"

namespace csgd {

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // measured worst-case value against the threshold
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Individual checks, reused by the verification CLI, the acceptance
// suite, and unit tests. Each returns the measured worst-case quantity.

// max over random pairs of ||P(w) - P(u)|| - ||w - u|| (ball projection).
double max_projection_expansion(int pairs, int dim, double radius,
                                std::uint64_t seed);

// max over random pairs of the strong-convexity defect
//   <grad f(u), w-u> + (l/2)||w-u||^2 - (f(w) - f(u));
// nonpositive (up to slack) when f is l-strongly convex.
double max_strong_convexity_defect(const GraphProblem& problem, double l,
                                   int pairs, std::uint64_t seed);

// max over random pairs of ||grad f(w) - grad f(u)|| / (L ||w - u||) - 1.
double max_smoothness_excess(const GraphProblem& problem, double L, int pairs,
                             std::uint64_t seed);

// max over random points of l ||u - w*||^2 - <grad f(u), u - w*>.
double max_gradient_coercivity_defect(const GraphProblem& problem, double l,
                                      int points, std::uint64_t seed);

// Worst violation of the relative-deviation sandwich and inner-product
// identities over logged estimator draws (delta taken as the realized
// deviation ratio of each draw).
double max_deviation_identity_violation(const GraphProblem& problem,
                                        const EstimatorSpec& spec,
                                        const Eigen::VectorXd& w, int draws,
                                        std::uint64_t seed);

// Central finite differences against a supplied gradient; returns the
// max relative error over random points. The gradient argument allows
// fault injection in tests.
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
double finite_difference_max_rel_err(const GraphProblem& problem,
                                     const GradientFn& gradient, int points,
                                     std::uint64_t seed, double h = 1e-5);

// Exact expectation of the output-sampled unbiased estimator on a small
// instance (enumerating all singleton output sets) versus the full
// gradient; returns the max absolute error.
double brute_force_unbiasedness_error(const GraphProblem& problem,
                                      const Eigen::VectorXd& w);

// max ulp distance between each high-probability bound at rho = delta =
// 0 and its unconditional counterpart, over a grid of constants.
std::uint64_t reduction_identity_max_ulp(int grid_points, std::uint64_t seed);

// Estimator MSE with a Monte Carlo standard error, for monotonicity
// checks with explicit slack.
struct MseEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};
MseEstimate estimator_mse_with_se(const EstimatorSpec& spec,
                                  const GraphProblem& problem,
                                  const Eigen::VectorXd& w, int trials,
                                  std::uint64_t seed);

// Runs every module-level invariant check and reports pass/fail with
// measured margins. Failures are report entries, not aborts.
VerifyReport verify_suite(std::uint64_t seed);

}  // namespace csgd
