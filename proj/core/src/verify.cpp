#include "csgd/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

#include "csgd/bounds.hpp"
#include "csgd/optimizer.hpp"
#include "csgd/rng.hpp"

namespace csgd {

namespace {

Eigen::VectorXd random_vector(CounterRng& rng, int dim, double scale) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = scale * rng.normal();
  return v;
}

std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  if (std::signbit(a) != std::signbit(b)) return UINT64_MAX;
  const auto ia = std::bit_cast<std::uint64_t>(std::abs(a));
  const auto ib = std::bit_cast<std::uint64_t>(std::abs(b));
  return ia > ib ? ia - ib : ib - ia;
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

double max_projection_expansion(int pairs, int dim, double radius,
                                std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  const FeasibleRegion region = FeasibleRegion::ball(radius);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    // Mix of interior and far-exterior points.
    const double s1 = std::exp(4.0 * rng.normal());
    const double s2 = std::exp(4.0 * rng.normal());
    const Eigen::VectorXd w = random_vector(rng, dim, s1 * radius / 10.0);
    const Eigen::VectorXd u = random_vector(rng, dim, s2 * radius / 10.0);
    const double expansion =
        (project(w, region) - project(u, region)).norm() - (w - u).norm();
    worst = std::max(worst, expansion);
  }
  return worst;
}

double max_strong_convexity_defect(const GraphProblem& problem, double l,
                                   int pairs, std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    const Eigen::VectorXd w = random_vector(rng, problem.dim(), 3.0);
    const Eigen::VectorXd u = random_vector(rng, problem.dim(), 3.0);
    const double defect = problem.gradient(u).dot(w - u) +
                          0.5 * l * (w - u).squaredNorm() -
                          (problem.objective(w) - problem.objective(u));
    worst = std::max(worst, defect);
  }
  return worst;
}

double max_smoothness_excess(const GraphProblem& problem, double L, int pairs,
                             std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    const Eigen::VectorXd w = random_vector(rng, problem.dim(), 3.0);
    const Eigen::VectorXd u = random_vector(rng, problem.dim(), 3.0);
    const double dn = (w - u).norm();
    if (dn == 0.0) continue;
    const double excess =
        (problem.gradient(w) - problem.gradient(u)).norm() / (L * dn) - 1.0;
    worst = std::max(worst, excess);
  }
  return worst;
}

double max_gradient_coercivity_defect(const GraphProblem& problem, double l,
                                      int points, std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < points; ++t) {
    const Eigen::VectorXd u = random_vector(rng, problem.dim(), 3.0);
    const Eigen::VectorXd r = u - problem.w_star();
    worst = std::max(worst, l * r.squaredNorm() - problem.gradient(u).dot(r));
  }
  return worst;
}

double max_deviation_identity_violation(const GraphProblem& problem,
                                        const EstimatorSpec& spec,
                                        const Eigen::VectorXd& w, int draws,
                                        std::uint64_t seed) {
  const Eigen::VectorXd h = problem.gradient(w);
  const double hn = h.norm();
  const Eigen::VectorXd r = w - problem.w_star();
  const double rn_sq = r.squaredNorm();
  double worst = 0.0;
  for (int t = 0; t < draws; ++t) {
    const auto sample = estimate_gradient(
        spec, problem, w, CounterRng::derive(seed, static_cast<std::uint64_t>(t)));
    const double dev = (sample.g - h).norm();
    const double delta = dev / hn;  // realized deviation ratio
    const double gn = sample.g.norm();
    // (1-delta)||h|| <= ||g|| <= (1+delta)||h||
    worst = std::max(worst, (1.0 - delta) * hn - gn);
    worst = std::max(worst, gn - (1.0 + delta) * hn);
    // |<g-h, w-w*>| <= (delta/2)(||h||^2 + ||w-w*||^2)
    const double ip = std::abs((sample.g - h).dot(r));
    worst = std::max(worst, ip - 0.5 * delta * (hn * hn + rn_sq));
  }
  return worst;
}

double finite_difference_max_rel_err(const GraphProblem& problem,
                                     const GradientFn& gradient, int points,
                                     std::uint64_t seed, double h) {
  CounterRng rng(seed, stream::kVerify);
  double worst = 0.0;
  for (int t = 0; t < points; ++t) {
    const Eigen::VectorXd w = random_vector(rng, problem.dim(), 2.0);
    const Eigen::VectorXd g = gradient(w);
    Eigen::VectorXd fd(problem.dim());
    Eigen::VectorXd e = w;
    for (int i = 0; i < problem.dim(); ++i) {
      e[i] = w[i] + h;
      const double fp = problem.objective(e);
      e[i] = w[i] - h;
      const double fm = problem.objective(e);
      e[i] = w[i];
      fd[i] = (fp - fm) / (2.0 * h);
    }
    worst = std::max(worst, (fd - g).norm() / std::max(g.norm(), 1e-300));
  }
  return worst;
}

double brute_force_unbiasedness_error(const GraphProblem& problem,
                                      const Eigen::VectorXd& w) {
  const int n = problem.n();
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(problem.dim());
  if (problem.kind() == ProblemKind::kConvex) {
    for (int i = 0; i < n; ++i) {
      const int out[] = {i};
      mean += layered_gradient(problem, w, all, out);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const int out[] = {i};
      mean += layered_gradient(problem, w, all, all, out);
    }
  }
  mean /= static_cast<double>(n);
  return (mean - problem.gradient(w)).cwiseAbs().maxCoeff();
}

std::uint64_t reduction_identity_max_ulp(int grid_points, std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  std::uint64_t worst = 0;
  for (int t = 0; t < grid_points; ++t) {
    BoundConstants c;
    c.G = std::exp(2.0 * rng.normal());
    c.l = std::exp(rng.normal());
    c.L = c.l * (1.0 + std::exp(rng.normal()));
    c.D = std::exp(rng.normal());
    c.c = std::exp(rng.normal());
    c.d_f = std::exp(rng.normal());
    c.T = 3 + static_cast<int>(rng.uniform_below(5000));
    c.rho = 0.0;
    c.delta = 0.0;
    const int T = c.T;
    const std::pair<TheoremId, TheoremId> pairs[] = {
        {TheoremId::kT10Iterate, TheoremId::kT2Iterate},
        {TheoremId::kT10Average, TheoremId::kT2Average},
        {TheoremId::kT11Smooth, TheoremId::kT3Smooth},
        {TheoremId::kT12Convex, TheoremId::kT4Convex},
        {TheoremId::kT13Nonconvex, TheoremId::kT5Nonconvex},
    };
    for (const auto& [high, base] : pairs) {
      worst = std::max(worst, ulp_distance(bound_value(high, c, T),
                                           bound_value(base, c, T)));
    }
  }
  return worst;
}

MseEstimate estimator_mse_with_se(const EstimatorSpec& spec,
                                  const GraphProblem& problem,
                                  const Eigen::VectorXd& w, int trials,
                                  std::uint64_t seed) {
  const Eigen::VectorXd full = problem.gradient(w);
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto sample = estimate_gradient(
        spec, problem, w, CounterRng::derive(seed, static_cast<std::uint64_t>(t)));
    const double err = (sample.g - full).squaredNorm();
    sum += err;
    sum_sq += err * err;
  }
  MseEstimate est;
  const double m = static_cast<double>(trials);
  est.mean = sum / m;
  const double var = std::max(0.0, sum_sq / m - est.mean * est.mean);
  est.std_error = std::sqrt(var / m);
  return est;
}

VerifyReport verify_suite(std::uint64_t seed) {
  VerifyReport report;
  const auto add = [&report](const std::string& name, bool pass, double margin,
                             std::string detail = {}) {
    report.checks.push_back({name, pass, margin, std::move(detail)});
  };

  const GraphProblem convex =
      make_problem(ProblemKind::kConvex, 300, 0.3, 10, 0, seed);
  const GraphProblem nonconvex =
      make_problem(ProblemKind::kNonconvex, 300, 0.3, 10, 5, seed);
  const auto curv = curvature_constants(convex);
  const double l = curv.l.value_or(0.0);

  {
    const double v = max_projection_expansion(100000, 10, 25.0, seed);
    add("projection_nonexpansion", v <= 1e-12, v);
  }
  {
    const double v = max_strong_convexity_defect(convex, l, 1000, seed);
    add("strong_convexity", v <= 1e-9, v);
  }
  {
    const double v = max_smoothness_excess(convex, curv.L, 1000, seed);
    add("smoothness_convex", v <= 1e-9, v);
  }
  {
    const double L_hat = estimate_smoothness(nonconvex, 10000, seed);
    const double v = max_smoothness_excess(nonconvex, L_hat, 1000, seed + 1);
    std::ostringstream d;
    d << "L_hat=" << L_hat;
    add("smoothness_nonconvex", v <= 1e-9, v, d.str());
  }
  {
    const double v = max_gradient_coercivity_defect(convex, l, 1000, seed);
    add("gradient_coercivity", v <= 1e-9, v);
  }
  {
    EstimatorSpec spec;
    spec.mode = EstimatorMode::kLayeredConsistent;
    spec.n1 = 30;
    spec.n2 = 30;
    CounterRng rng(seed, stream::kVerify);
    const Eigen::VectorXd w = random_vector(rng, convex.dim(), 2.0);
    const double v =
        max_deviation_identity_violation(convex, spec, w, 1000, seed);
    add("deviation_identities", v <= 1e-12, v);
  }
  {
    const double v = finite_difference_max_rel_err(
        convex, [&convex](const Eigen::VectorXd& w) { return convex.gradient(w); },
        20, seed);
    add("finite_difference_convex", v <= 1e-6, v);
  }
  {
    const double v = finite_difference_max_rel_err(
        nonconvex,
        [&nonconvex](const Eigen::VectorXd& w) { return nonconvex.gradient(w); },
        20, seed);
    add("finite_difference_nonconvex", v <= 1e-6, v);
  }
  {
    const GraphProblem toy =
        make_problem(ProblemKind::kConvex, 4, 0.7, 3, 0, seed);
    CounterRng rng(seed + 2, stream::kVerify);
    const Eigen::VectorXd w = random_vector(rng, toy.dim(), 1.0);
    const double v = brute_force_unbiasedness_error(toy, w);
    add("brute_force_unbiasedness", v <= 1e-12, v);
  }
  {
    const auto ulps = reduction_identity_max_ulp(100, seed);
    add("reduction_identities", ulps <= 1,
        static_cast<double>(ulps));
  }
  {
    CounterRng rng(seed + 3, stream::kVerify);
    const Eigen::VectorXd w = random_vector(rng, convex.dim(), 2.0);
    EstimatorSpec spec;
    spec.mode = EstimatorMode::kLayeredConsistent;
    spec.n2 = 300;
    double prev_lower = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    std::ostringstream d;
    for (int n1 : {10, 30, 100, 300}) {
      spec.n1 = n1;
      const auto est = estimator_mse_with_se(spec, convex, w, 2000, seed + n1);
      // Strict decrease with 2-standard-error separation.
      if (!(est.mean + 2.0 * est.std_error < prev_lower)) decreasing = false;
      prev_lower = est.mean - 2.0 * est.std_error;
      d << "n1=" << n1 << ":" << est.mean << " ";
    }
    spec.n1 = 300;
    spec.n2 = 300;
    const double full_mse = estimator_mse(spec, convex, w, 4, seed);
    add("mse_monotone", decreasing && full_mse == 0.0, full_mse, d.str());
  }
  return report;
}

}  // namespace csgd
