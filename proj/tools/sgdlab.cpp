// Command-line harness for the SGD convergence experiments: data
// generation, experiment runs with trace/bound/summary outputs, rate
// checks, plots, and the invariant verification suite.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "csgd/bounds.hpp"
#include "csgd/experiment.hpp"
#include "csgd/plot.hpp"
#include "csgd/verify.hpp"

namespace {

using namespace csgd;

int cmd_generate(const std::string& kind_str, int n, double p, int d, int d2,
                 std::uint64_t seed, const std::string& out) {
  const ProblemKind kind =
      kind_str == "nonconvex" ? ProblemKind::kNonconvex : ProblemKind::kConvex;
  const GraphProblem problem = make_problem(kind, n, p, d, d2, seed);
  const std::filesystem::path dir(out);
  write_matrix_csv(problem.A(), dir / "A.csv");
  write_matrix_csv(problem.X(), dir / "X.csv");
  write_matrix_csv(problem.w_star(), dir / "wstar.csv");
  write_matrix_csv(problem.y(), dir / "y.csv");
  std::cout << "wrote A, X, wstar, y to " << dir.string() << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& panel,
            const std::vector<std::string>& overrides) {
  ExperimentConfig config;
  if (!panel.empty()) {
    config = panel_config(panel);
  } else if (!config_path.empty()) {
    config = parse_config(config_path);
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "override must be key=value: " << kv << "\n";
      return 2;
    }
    apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  const auto result = run_experiment(config);
  std::cout << "seeds: " << result.seeds.size() << ", T: " << config.T
            << ", outputs in " << config.out_dir.string() << "\n";
  for (const auto& s : result.seeds) {
    std::printf("  seed %llu: l=%.6g L=%.6g G_hat=%.6g proj_active=%d\n",
                static_cast<unsigned long long>(s.seed), s.l, s.L, s.G_hat,
                s.proj_ever_active ? 1 : 0);
  }
  if (result.rate) {
    const auto& r = *result.rate;
    std::printf("rate check [%s, k in %d..%d]: slope=%.4f (target %.4f) "
                "R2=%.4f -> %s\n",
                r.metric.c_str(), r.k_lo, r.k_hi, r.slope, r.target_slope,
                r.r_squared, r.pass ? "pass" : "FAIL");
    return r.pass ? 0 : 1;
  }
  return 0;
}

int cmd_bounds(const std::string& theorem_str, double G, double l, double L,
               double D, double c, double Df, double rho, double delta, int T,
               const std::string& out) {
  const auto id = theorem_from_string(theorem_str);
  if (!id) {
    std::cerr << "unknown theorem id: " << theorem_str << "\n";
    return 2;
  }
  BoundConstants consts;
  consts.G = G;
  consts.l = l;
  consts.L = L;
  consts.D = D;
  consts.c = c;
  consts.d_f = Df;
  consts.rho = rho;
  consts.delta = delta;
  consts.T = T;
  const bool horizon_only =
      *id == TheoremId::kT5Nonconvex || *id == TheoremId::kT10Iterate ||
      *id == TheoremId::kT10Average || *id == TheoremId::kT11Smooth ||
      *id == TheoremId::kT12Convex || *id == TheoremId::kT13Nonconvex;
  const int k_start =
      (*id == TheoremId::kT2Iterate || *id == TheoremId::kT3Smooth) ? 3 : 1;
  std::vector<int> ks;
  std::vector<double> vals;
  if (horizon_only) {
    ks.push_back(T);
    vals.push_back(bound_value(*id, consts, T));
  } else {
    for (int k = k_start; k <= T; ++k) {
      ks.push_back(k);
      vals.push_back(bound_value(*id, consts, k));
    }
  }
  if (out.empty()) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::cout << ks[i] << ',' << format_double(vals[i]) << '\n';
    }
  } else {
    write_bound_csv(ks, vals, theorem_str, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_check_rate(const std::string& trace_path, const std::string& metric,
                   double target, int k_lo, int k_hi) {
  const RunTrace trace = read_trace_csv(trace_path);
  std::vector<int> ks;
  std::vector<double> vals;
  for (const auto& row : trace.rows) {
    ks.push_back(row.k);
    if (metric == "dist_sq") vals.push_back(row.dist_sq);
    else if (metric == "f_gap") vals.push_back(row.f_gap);
    else if (metric == "avg_gap") vals.push_back(row.avg_gap);
    else if (metric == "grad_norm_sq") vals.push_back(row.grad_norm_sq);
    else if (metric == "min_grad_norm_sq") vals.push_back(row.min_grad_norm_sq);
    else {
      std::cerr << "unknown metric: " << metric << "\n";
      return 2;
    }
  }
  if (k_hi <= 0) k_hi = ks.empty() ? 1 : ks.back();
  const auto r = check_rate(ks, vals, metric, target, k_lo, k_hi);
  std::printf("%s: slope=%.6f intercept=%.6f R2=%.6f window=[%d,%d] "
              "used=%d excluded=%d floor_cutoff=%d -> %s\n",
              r.metric.c_str(), r.slope, r.intercept, r.r_squared, r.k_lo,
              r.k_hi, r.used_points, r.excluded_points, r.floor_cutoff,
              r.pass ? "pass" : "FAIL");
  return r.pass ? 0 : 1;
}

int cmd_plot(const std::vector<std::string>& trace_paths,
             const std::vector<std::string>& bound_paths,
             const std::string& title, double ref_c0, double ref_exponent,
             const std::string& out) {
  std::vector<PlotSeries> series;
  const char* colors[] = {"red", "cyan", "blue", "magenta"};
  const char* metrics[] = {"dist_sq", "avg_gap", "f_gap", "min_grad_norm_sq"};
  std::vector<double> ks;
  for (const auto& path : trace_paths) {
    const RunTrace trace = read_trace_csv(path);
    if (trace.rows.empty()) {
      std::cerr << "empty trace: " << path << "\n";
      return 2;
    }
    for (int m = 0; m < 4; ++m) {
      PlotSeries s;
      s.label = metrics[m];
      s.color = colors[m];
      for (const auto& row : trace.rows) {
        s.x.push_back(static_cast<double>(row.k));
        const double v = m == 0   ? row.dist_sq
                         : m == 1 ? row.avg_gap
                         : m == 2 ? row.f_gap
                                  : row.min_grad_norm_sq;
        s.y.push_back(v);
        if (ks.size() < trace.rows.size()) ks.push_back(s.x.back());
      }
      series.push_back(std::move(s));
    }
  }
  for (const auto& path : bound_paths) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open: " << path << "\n";
      return 2;
    }
    std::string line;
    std::getline(in, line);  // header
    PlotSeries s;
    s.color = "black";
    s.dashed = true;
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) continue;
      s.x.push_back(std::stod(line.substr(0, c1)));
      s.y.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
      s.label = line.substr(c2 + 1);
    }
    series.push_back(std::move(s));
  }
  if (ref_c0 > 0.0 && !ks.empty()) {
    series.push_back(reference_line(
        ks, ref_c0, ref_exponent,
        "O(k^" + std::to_string(ref_exponent).substr(0, 5) + ")"));
  }
  emit_plot(series, title, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_verify(std::uint64_t seed) {
  const VerifyReport report = verify_suite(seed);
  for (const auto& c : report.checks) {
    std::printf("[%s] %-28s margin=%.3e %s\n", c.pass ? "pass" : "FAIL",
                c.name.c_str(), c.margin, c.detail.c_str());
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SGD convergence experiments with layered gradient estimators"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write A, X, w*, y as CSV");
  std::string g_kind = "convex", g_out = "data";
  int g_n = 300, g_d = 10, g_d2 = 5;
  double g_p = 0.3;
  std::uint64_t g_seed = 1;
  gen->add_option("--kind", g_kind)->check(CLI::IsMember({"convex", "nonconvex"}));
  gen->add_option("--n", g_n);
  gen->add_option("--p", g_p);
  gen->add_option("--d", g_d);
  gen->add_option("--d2", g_d2);
  gen->add_option("--seed", g_seed);
  gen->add_option("--out", g_out);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment from a config");
  std::string r_config, r_panel;
  std::vector<std::string> r_overrides;
  run->add_option("--config", r_config, "flat key=value config file");
  run->add_option("--panel", r_panel, "canonical panel: fig1a..fig1d");
  run->add_option("--set", r_overrides, "override, key=value (repeatable)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Evaluate a theorem bound curve");
  std::string b_theorem, b_out;
  double b_G = 0, b_l = 0, b_L = 0, b_D = 0, b_c = 0, b_Df = 0, b_rho = 0,
         b_delta = 0;
  int b_T = 3000;
  bnd->add_option("--theorem", b_theorem)->required();
  bnd->add_option("--G", b_G);
  bnd->add_option("--l", b_l);
  bnd->add_option("--L", b_L);
  bnd->add_option("--D", b_D);
  bnd->add_option("--c", b_c);
  bnd->add_option("--Df", b_Df);
  bnd->add_option("--rho", b_rho);
  bnd->add_option("--delta", b_delta);
  bnd->add_option("--T", b_T);
  bnd->add_option("--out", b_out);

  // check-rate
  auto* rate = app.add_subcommand("check-rate", "Fit a log-log slope");
  std::string cr_trace, cr_metric = "dist_sq";
  double cr_target = -0.8;
  int cr_klo = 100, cr_khi = 0;
  rate->add_option("--trace", cr_trace)->required();
  rate->add_option("--metric", cr_metric);
  rate->add_option("--target", cr_target);
  rate->add_option("--k-lo", cr_klo);
  rate->add_option("--k-hi", cr_khi);

  // plot
  auto* plot = app.add_subcommand("plot", "Render traces and bounds as SVG");
  std::vector<std::string> p_traces, p_bounds;
  std::string p_title = "convergence", p_out = "plot.svg";
  double p_ref_c0 = 0.0, p_ref_exp = -1.0;
  plot->add_option("--trace", p_traces, "trace CSV (repeatable)");
  plot->add_option("--bound", p_bounds, "bound CSV (repeatable)");
  plot->add_option("--title", p_title);
  plot->add_option("--ref-c0", p_ref_c0, "reference power-law constant");
  plot->add_option("--ref-exp", p_ref_exp, "reference power-law exponent");
  plot->add_option("--out", p_out);

  // verify
  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  std::uint64_t v_seed = 1;
  ver->add_option("--seed", v_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(g_kind, g_n, g_p, g_d, g_d2, g_seed, g_out);
    }
    if (run->parsed()) return cmd_run(r_config, r_panel, r_overrides);
    if (bnd->parsed()) {
      return cmd_bounds(b_theorem, b_G, b_l, b_L, b_D, b_c, b_Df, b_rho,
                        b_delta, b_T, b_out);
    }
    if (rate->parsed()) {
      return cmd_check_rate(cr_trace, cr_metric, cr_target, cr_klo, cr_khi);
    }
    if (plot->parsed()) {
      return cmd_plot(p_traces, p_bounds, p_title, p_ref_c0, p_ref_exp, p_out);
    }
    if (ver->parsed()) return cmd_verify(v_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
