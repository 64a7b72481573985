#include "csgd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <stdexcept>

namespace csgd {

namespace {

constexpr int kSmoothnessPairs = 10000;

bool needs_L(const ExperimentConfig& config) {
  if (config.rule == StepRule::kConstantNonconvex ||
      config.rule == StepRule::kHighProbConstantNonconvex) {
    return true;
  }
  for (TheoremId id : config.bound_curves) {
    if (id == TheoremId::kT3Smooth || id == TheoremId::kT5Nonconvex ||
        id == TheoremId::kT11Smooth || id == TheoremId::kT13Nonconvex) {
      return true;
    }
  }
  return false;
}

SeedResult run_one_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SeedResult result;
  result.seed = seed;
  GraphProblem problem =
      make_problem(config.kind, config.n, config.p, config.d,
                   config.kind == ProblemKind::kNonconvex ? config.d2 : 0,
                   seed);
  const FeasibleRegion region = FeasibleRegion::ball(problem.radius());
  const Eigen::VectorXd w1 = initial_iterate(problem, region, seed);

  if (problem.kind() == ProblemKind::kConvex) {
    const auto curv = curvature_constants(problem);
    result.l = curv.l.value_or(0.0);
    result.L = curv.L;
  } else if (needs_L(config)) {
    result.L = estimate_smoothness(problem, kSmoothnessPairs, seed);
  }

  StepSchedule schedule;
  schedule.rule = config.rule;
  schedule.l = result.l;
  schedule.lk_scale = config.lk_scale;
  schedule.c = config.c;
  schedule.gamma = config.gamma;
  schedule.rho = config.rho;
  schedule.delta = config.delta;
  schedule.horizon = config.T;
  if (config.rule == StepRule::kConstantNonconvex ||
      config.rule == StepRule::kHighProbConstantNonconvex) {
    if (!(config.G > 0.0)) {
      throw std::invalid_argument(
          "config: field 'G' must be set for constant_nonconvex schedules");
    }
    schedule.g = config.G;
    result.D_f = d_f(problem.objective(w1), problem.f_star(), result.L);
    schedule.d_f = result.D_f;
  }
  if ((config.rule == StepRule::kInverseLk ||
       config.rule == StepRule::kHighProbInverseLk) &&
      !(result.l > 0.0)) {
    throw std::runtime_error(
        "run_experiment: 1/(lk) schedule requires l > 0 (rank-deficient AX?)");
  }

  result.trace = run_sgd(problem, config.estimator, schedule, region, config.T,
                         w1, seed);
  result.G_hat = std::max(result.trace.max_g_norm, result.trace.max_grad_norm);
  for (const auto& row : result.trace.rows) {
    if (row.proj_active) result.proj_ever_active = true;
  }
  // D_f from the realized run when not needed up front (reported for
  // bound overlays on nonconvex traces).
  if (result.D_f == 0.0 && result.L > 0.0) {
    result.D_f = d_f(problem.objective(w1), problem.f_star(), result.L);
  }

  if (config.dump_data) {
    const auto dir = config.out_dir;
    const std::string tag = "seed" + std::to_string(seed);
    write_matrix_csv(problem.A(), dir / (tag + "_A.csv"));
    write_matrix_csv(problem.X(), dir / (tag + "_X.csv"));
    write_matrix_csv(problem.w_star(), dir / (tag + "_wstar.csv"));
    write_matrix_csv(problem.y(), dir / (tag + "_y.csv"));
  }
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  {  // fail early on an unwritable output directory
    const auto probe = config.out_dir / ".writable";
    std::ofstream test(probe);
    if (!test) {
      throw std::runtime_error("run_experiment: output directory not "
                               "writable: " + config.out_dir.string());
    }
    test.close();
    std::filesystem::remove(probe);
  }

  ExperimentResult result;
  std::vector<std::future<SeedResult>> futures;
  futures.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) {
    futures.push_back(std::async(std::launch::async,
                                 [&config, seed] { return run_one_seed(config, seed); }));
  }
  for (auto& f : futures) result.seeds.push_back(f.get());

  // Seed-mean metrics, aligned on k.
  result.mean_rows.resize(static_cast<std::size_t>(config.T));
  for (int k = 1; k <= config.T; ++k) {
    TraceRow& m = result.mean_rows[static_cast<std::size_t>(k - 1)];
    m.k = k;
    m.gamma = result.seeds.front().trace.rows[static_cast<std::size_t>(k - 1)].gamma;
    for (const auto& s : result.seeds) {
      const auto& row = s.trace.rows[static_cast<std::size_t>(k - 1)];
      m.dist_sq += row.dist_sq;
      m.f_gap += row.f_gap;
      m.avg_gap += row.avg_gap;
      m.grad_norm_sq += row.grad_norm_sq;
      m.min_grad_norm_sq += row.min_grad_norm_sq;
      m.proj_active = m.proj_active || row.proj_active;
    }
    const double ns = static_cast<double>(result.seeds.size());
    m.dist_sq /= ns;
    m.f_gap /= ns;
    m.avg_gap /= ns;
    m.grad_norm_sq /= ns;
    m.min_grad_norm_sq /= ns;
  }

  // Conservative bound constants across seeds.
  BoundConstants& bc = result.bound_constants;
  bc.T = config.T;
  bc.c = config.c;
  bc.rho = config.rho;
  bc.delta = config.delta;
  bc.D = 2.0 * 100.0 *
         (config.kind == ProblemKind::kConvex
              ? static_cast<double>(config.d)
              : static_cast<double>(config.d + 1) * config.d2);
  for (const auto& s : result.seeds) {
    bc.G = std::max(bc.G, s.G_hat);
    bc.L = std::max(bc.L, s.L);
    bc.l = bc.l == 0.0 ? s.l : std::min(bc.l, s.l);
    bc.d_f = std::max(bc.d_f, s.D_f);
  }

  // Write per-seed traces and the mean trace.
  for (const auto& s : result.seeds) {
    write_trace_csv(s.trace,
                    config.out_dir / ("trace_seed" + std::to_string(s.seed) + ".csv"));
  }
  RunTrace mean_trace;
  mean_trace.rows = result.mean_rows;
  write_trace_csv(mean_trace, config.out_dir / "mean_trace.csv");

  // Requested bound curves on the same k-grid.
  for (TheoremId id : config.bound_curves) {
    std::vector<int> ks;
    std::vector<double> vals;
    const bool horizon_only =
        id == TheoremId::kT5Nonconvex || id == TheoremId::kT10Iterate ||
        id == TheoremId::kT10Average || id == TheoremId::kT11Smooth ||
        id == TheoremId::kT12Convex || id == TheoremId::kT13Nonconvex;
    const int k_start =
        (id == TheoremId::kT2Iterate || id == TheoremId::kT3Smooth) ? 3 : 1;
    if (horizon_only) {
      ks.push_back(config.T);
      vals.push_back(bound_value(id, bc, config.T));
    } else {
      for (int k = k_start; k <= config.T; ++k) {
        ks.push_back(k);
        vals.push_back(bound_value(id, bc, k));
      }
    }
    write_bound_csv(ks, vals, std::string(to_string(id)),
                    config.out_dir /
                        ("bound_" + std::string(to_string(id)) + ".csv"));
  }

  // Rate check on the mean trace.
  if (!config.rate_metric.empty()) {
    std::vector<int> ks;
    std::vector<double> vals;
    ks.reserve(result.mean_rows.size());
    for (const auto& row : result.mean_rows) {
      ks.push_back(row.k);
      if (config.rate_metric == "dist_sq") vals.push_back(row.dist_sq);
      else if (config.rate_metric == "f_gap") vals.push_back(row.f_gap);
      else if (config.rate_metric == "avg_gap") vals.push_back(row.avg_gap);
      else if (config.rate_metric == "grad_norm_sq")
        vals.push_back(row.grad_norm_sq);
      else vals.push_back(row.min_grad_norm_sq);
    }
    const int k_hi = config.rate_k_hi > 0 ? std::min(config.rate_k_hi, config.T)
                                          : config.T;
    result.rate = check_rate(ks, vals, config.rate_metric, config.rate_target,
                             config.rate_k_lo, k_hi);
  }

  // Summary: every constant used by any emitted curve, plus verdicts.
  {
    std::ofstream out(config.out_dir / "summary.txt", std::ios::binary);
    out << "kind=" << to_string(config.kind) << '\n'
        << "n=" << config.n << '\n'
        << "p=" << format_double(config.p) << '\n'
        << "d=" << config.d << '\n';
    if (config.kind == ProblemKind::kNonconvex) out << "d2=" << config.d2 << '\n';
    out << "estimator=" << to_string(config.estimator.mode) << '\n'
        << "n1=" << config.estimator.n1 << '\n'
        << "n2=" << config.estimator.n2 << '\n'
        << "n3=" << config.estimator.n3 << '\n'
        << "schedule=" << to_string(config.rule) << '\n'
        << "lk_scale=" << format_double(config.lk_scale) << '\n'
        << "c=" << format_double(config.c) << '\n'
        << "gamma=" << format_double(config.gamma) << '\n'
        << "rho=" << format_double(config.rho) << '\n'
        << "delta=" << format_double(config.delta) << '\n'
        << "T=" << config.T << '\n';
    out << "seeds=";
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
      if (i) out << ',';
      out << config.seeds[i];
    }
    out << '\n';
    out << "bound_G=" << format_double(bc.G) << '\n'
        << "bound_l=" << format_double(bc.l) << '\n'
        << "bound_L=" << format_double(bc.L) << '\n'
        << "bound_D=" << format_double(bc.D) << '\n'
        << "bound_D_f=" << format_double(bc.d_f) << '\n';
    for (const auto& s : result.seeds) {
      out << "seed" << s.seed << "_l=" << format_double(s.l)
          << " L=" << format_double(s.L) << " G_hat=" << format_double(s.G_hat)
          << " D_f=" << format_double(s.D_f)
          << " proj_active=" << (s.proj_ever_active ? 1 : 0) << '\n';
    }
    if (result.rate) {
      const auto& r = *result.rate;
      out << "rate_metric=" << r.metric << '\n'
          << "rate_window=" << r.k_lo << ':' << r.k_hi << '\n'
          << "rate_slope=" << format_double(r.slope) << '\n'
          << "rate_r2=" << format_double(r.r_squared) << '\n'
          << "rate_target=" << format_double(r.target_slope) << '\n'
          << "rate_floor_cutoff=" << r.floor_cutoff << '\n'
          << "rate_verdict=" << (r.pass ? "pass" : "fail") << '\n';
    }
  }
  return result;
}

}  // namespace csgd
