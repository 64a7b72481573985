#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "csgd/problem.hpp"

namespace csgd {

enum class EstimatorMode {
  kExact,              // full analytic gradient
  kMinibatchUnbiased,  // inner layers full, output layer sampled
  kLayeredConsistent,  // every layer uniformly subsampled and rescaled
};

struct EstimatorSpec {
  EstimatorMode mode = EstimatorMode::kExact;
  int n1 = 0;  // input-layer sample count
  int n2 = 0;  // middle (nonconvex) / output (convex) sample count
  int n3 = 0;  // output sample count, nonconvex only
  bool replacement = false;

  void validate(const GraphProblem& problem) const;
};

struct GradientSample {
  Eigen::VectorXd g;
  int n1 = 0, n2 = 0, n3 = 0;  // sample sizes actually used
  std::uint64_t draw_seed = 0;
};

// One draw of the configured estimator.
//
// Convex layered form:     grad of (1/(2 n2)) || (n/n1) A(I2,I1) X(I1,:) w - y(I2) ||^2
// Nonconvex layered form:  grad of (1/(2 n3)) || (n/n2) A(I3,I2) sigma((n/n1) A(I2,I1) X(I1,:) W1) W2 - y(I3) ||^2
//
// kMinibatchUnbiased keeps the inner layers full (I1 = all nodes for the
// convex kind; I1 = I2 = all for the nonconvex kind), which makes the
// draw unbiased. Deterministic given seed.
GradientSample estimate_gradient(const EstimatorSpec& spec,
                                 const GraphProblem& problem,
                                 const Eigen::VectorXd& w, std::uint64_t seed);

// Layered gradient for explicit index sets (i3 ignored for the convex
// kind). This is the deterministic core of estimate_gradient; exposing
// it lets callers enumerate all possible draws of a small instance.
Eigen::VectorXd layered_gradient(const GraphProblem& problem,
                                 const Eigen::VectorXd& w,
                                 std::span<const int> i1,
                                 std::span<const int> i2,
                                 std::span<const int> i3 = {});

// Mean of ||g - grad f(w)||^2 over independent draws.
double estimator_mse(const EstimatorSpec& spec, const GraphProblem& problem,
                     const Eigen::VectorXd& w, int trials, std::uint64_t seed);

struct TailPoint {
  int N = 0;          // per-layer sample size
  double p_hat = 0;   // empirical exceedance probability
};

struct TailEstimate {
  double delta = 0.0;
  int trials = 0;
  std::vector<TailPoint> points;
  double tau_hat = 0.0;   // fitted decay rate; 0 when unavailable
  double c_hat = 0.0;     // fitted tail constant (intercept)
  bool fit_ok = false;    // at least two grid points with p_hat in (0,1)
};

// Empirical check of the exponential-tail assumption: for each grid
// size N (mapped to n1 for the convex kind, n1 = n2 for the nonconvex
// kind), p_hat is the fraction of draws with
// ||g - grad f(w)|| >= delta * ||grad f(w)||. tau_hat and c_hat come
// from a least-squares fit of log p_hat against N using only grid
// points with p_hat strictly inside (0, 1).
TailEstimate empirical_tail(const EstimatorSpec& spec,
                            const GraphProblem& problem,
                            const Eigen::VectorXd& w, double delta,
                            std::span<const int> n_grid, int trials,
                            std::uint64_t seed);

}  // namespace csgd
