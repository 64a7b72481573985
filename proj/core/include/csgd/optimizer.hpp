#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "csgd/estimator.hpp"
#include "csgd/problem.hpp"

namespace csgd {

enum class StepRule {
  kInverseLk,               // 1 / (lk_scale * l * k)
  kInverseSqrt,             // c / sqrt(k)
  kConstantNonconvex,       // D_f / (G sqrt(T))
  kConstant,                // fixed gamma
  kHighProbInverseLk,       // 1 / ((l - rho/T) k)
  kHighProbConstantNonconvex,  // D_f / ((1 + delta) G sqrt(T))
};

struct StepSchedule {
  StepRule rule = StepRule::kInverseLk;
  double l = 0.0;
  double lk_scale = 1.0;  // 1/(lk) by default; 20 reproduces 1/(20 l k)
  double c = 0.0;
  double d_f = 0.0;
  double g = 0.0;
  double gamma = 0.0;  // kConstant only
  int horizon = 0;     // T, for the constant / high-probability rules
  double rho = 0.0;
  double delta = 0.0;
};

double step_size(const StepSchedule& schedule, int k);

enum class RegionShape { kBall, kUnconstrained };

struct FeasibleRegion {
  RegionShape shape = RegionShape::kUnconstrained;
  double radius = 0.0;

  static FeasibleRegion ball(double radius) {
    return {RegionShape::kBall, radius};
  }
  static FeasibleRegion unconstrained() { return {}; }
};

// Euclidean projection onto the region; identity when unconstrained.
Eigen::VectorXd project(const Eigen::VectorXd& w, const FeasibleRegion& region);

struct TraceRow {
  int k = 0;
  double gamma = 0.0;
  double dist_sq = 0.0;          // ||w_k - w*||^2
  double f_gap = 0.0;            // f(w_k) - f*
  double avg_gap = 0.0;          // f(wbar_k) - f*
  double grad_norm_sq = 0.0;     // ||grad f(w_k)||^2 (exact gradient)
  double min_grad_norm_sq = 0.0; // running min of grad_norm_sq
  bool proj_active = false;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  Eigen::VectorXd w_final;       // w_T
  Eigen::VectorXd w_avg_final;   // wbar_T
  double max_g_norm = 0.0;       // max over k of ||g_k||
  double max_grad_norm = 0.0;    // max over k of ||grad f(w_k)||
  // Full iterates stored at k = 1, k = T and every `stride` steps.
  std::vector<std::pair<int, Eigen::VectorXd>> stored_iterates;
};

// Gradient source for one iteration: (w, k) -> negative search direction.
using GradientSource =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& w, int k)>;

struct RunOptions {
  int iterate_stride = 0;  // 0: store only k = 1 and k = T
};

// Projected SGD: w_{k+1} = Pi_S(w_k - gamma_k g_k), k = 1..T, with
// per-iteration metric recording against the exact objective/gradient.
// The running average is maintained incrementally. Aborts with a
// diagnostic naming the iteration if an iterate turns non-finite.
RunTrace run_sgd(const GraphProblem& problem, const GradientSource& source,
                 const StepSchedule& schedule, const FeasibleRegion& region,
                 int T, const Eigen::VectorXd& w1,
                 const RunOptions& options = {});

// Same loop driven by an estimator spec; the draw seed for iteration k
// is derived from (seed, k).
RunTrace run_sgd(const GraphProblem& problem, const EstimatorSpec& spec,
                 const StepSchedule& schedule, const FeasibleRegion& region,
                 int T, const Eigen::VectorXd& w1, std::uint64_t seed,
                 const RunOptions& options = {});

// Standard-normal initial iterate, projected back into the region.
Eigen::VectorXd initial_iterate(const GraphProblem& problem,
                                const FeasibleRegion& region,
                                std::uint64_t seed);

}  // namespace csgd
