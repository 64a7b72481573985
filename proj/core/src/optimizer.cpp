#include "csgd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "csgd/rng.hpp"

namespace csgd {

double step_size(const StepSchedule& schedule, int k) {
  if (k < 1) throw std::invalid_argument("step_size: k must be >= 1");
  const double kk = static_cast<double>(k);
  switch (schedule.rule) {
    case StepRule::kInverseLk:
      if (schedule.l <= 0.0) throw std::invalid_argument("step_size: l <= 0");
      return 1.0 / (schedule.lk_scale * schedule.l * kk);
    case StepRule::kInverseSqrt:
      if (schedule.c <= 0.0) throw std::invalid_argument("step_size: c <= 0");
      return schedule.c / std::sqrt(kk);
    case StepRule::kConstantNonconvex:
      if (schedule.g <= 0.0 || schedule.horizon < 1) {
        throw std::invalid_argument("step_size: constant rule needs G, T");
      }
      return schedule.d_f /
             (schedule.g * std::sqrt(static_cast<double>(schedule.horizon)));
    case StepRule::kConstant:
      if (schedule.gamma <= 0.0) {
        throw std::invalid_argument("step_size: gamma <= 0");
      }
      return schedule.gamma;
    case StepRule::kHighProbInverseLk: {
      if (schedule.horizon < 1) {
        throw std::invalid_argument("step_size: high-prob rule needs T");
      }
      const double eff =
          schedule.l - schedule.rho / static_cast<double>(schedule.horizon);
      if (eff <= 0.0) {
        throw std::invalid_argument("step_size: l - rho/T must be positive");
      }
      return 1.0 / (eff * kk);
    }
    case StepRule::kHighProbConstantNonconvex:
      if (!(schedule.delta > 0.0 && schedule.delta < 1.0)) {
        throw std::invalid_argument("step_size: delta must lie in (0, 1)");
      }
      if (schedule.g <= 0.0 || schedule.horizon < 1) {
        throw std::invalid_argument("step_size: constant rule needs G, T");
      }
      return schedule.d_f /
             ((1.0 + schedule.delta) * schedule.g *
              std::sqrt(static_cast<double>(schedule.horizon)));
  }
  throw std::logic_error("step_size: unknown rule");
}

Eigen::VectorXd project(const Eigen::VectorXd& w,
                        const FeasibleRegion& region) {
  if (region.shape == RegionShape::kUnconstrained) return w;
  if (region.radius <= 0.0) {
    throw std::invalid_argument("project: ball radius must be positive");
  }
  const double norm = w.norm();
  if (norm <= region.radius) return w;
  return w * (region.radius / norm);
}

RunTrace run_sgd(const GraphProblem& problem, const GradientSource& source,
                 const StepSchedule& schedule, const FeasibleRegion& region,
                 int T, const Eigen::VectorXd& w1, const RunOptions& options) {
  if (T < 1) throw std::invalid_argument("run_sgd: T must be >= 1");
  if (w1.size() != problem.dim()) {
    throw std::invalid_argument("run_sgd: w1 dimension mismatch");
  }
  RunTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(T));
  Eigen::VectorXd w = w1;
  Eigen::VectorXd w_avg = w1;
  double min_gns = std::numeric_limits<double>::infinity();
  trace.stored_iterates.emplace_back(1, w);
  for (int k = 1; k <= T; ++k) {
    if (!w.allFinite()) {
      throw std::runtime_error("run_sgd: non-finite iterate at k = " +
                               std::to_string(k));
    }
    if (k > 1) {
      // wbar_k = ((k-1) wbar_{k-1} + w_k) / k
      w_avg += (w - w_avg) / static_cast<double>(k);
      if (options.iterate_stride > 0 && k % options.iterate_stride == 0) {
        trace.stored_iterates.emplace_back(k, w);
      }
    }
    const Eigen::VectorXd grad = problem.gradient(w);
    const double gns = grad.squaredNorm();
    min_gns = std::min(min_gns, gns);
    trace.max_grad_norm = std::max(trace.max_grad_norm, std::sqrt(gns));

    const double gamma = step_size(schedule, k);
    const Eigen::VectorXd g = source(w, k);
    trace.max_g_norm = std::max(trace.max_g_norm, g.norm());

    TraceRow row;
    row.k = k;
    row.gamma = gamma;
    row.dist_sq = (w - problem.w_star()).squaredNorm();
    row.f_gap = problem.objective(w) - problem.f_star();
    row.avg_gap = problem.objective(w_avg) - problem.f_star();
    row.grad_norm_sq = gns;
    row.min_grad_norm_sq = min_gns;

    if (k == T) {
      trace.w_final = w;  // w_T, before the last update
      trace.w_avg_final = w_avg;
      if (trace.stored_iterates.back().first != T) {
        trace.stored_iterates.emplace_back(T, w);
      }
    }
    const Eigen::VectorXd stepped = w - gamma * g;
    w = project(stepped, region);
    row.proj_active =
        region.shape == RegionShape::kBall && stepped.norm() > region.radius;
    trace.rows.push_back(row);
  }
  return trace;
}

RunTrace run_sgd(const GraphProblem& problem, const EstimatorSpec& spec,
                 const StepSchedule& schedule, const FeasibleRegion& region,
                 int T, const Eigen::VectorXd& w1, std::uint64_t seed,
                 const RunOptions& options) {
  GradientSource source = [&problem, &spec, seed](const Eigen::VectorXd& w,
                                                  int k) {
    const std::uint64_t draw_seed =
        CounterRng::derive(seed, static_cast<std::uint64_t>(k));
    return estimate_gradient(spec, problem, w, draw_seed).g;
  };
  return run_sgd(problem, source, schedule, region, T, w1, options);
}

Eigen::VectorXd initial_iterate(const GraphProblem& problem,
                                const FeasibleRegion& region,
                                std::uint64_t seed) {
  CounterRng rng(seed, stream::kInitIterate);
  Eigen::VectorXd w(problem.dim());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = rng.normal();
  return project(w, region);
}

}  // namespace csgd
