#include "csgd/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "csgd/rng.hpp"

namespace csgd {

namespace {

std::vector<int> all_indices(int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

std::vector<int> draw_layer(CounterRng& rng, int n, int m, bool replacement) {
  return replacement ? rng.sample_with_replacement(n, m)
                     : rng.sample_without_replacement(n, m);
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& M, const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), M.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = M.row(idx[i]);
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& M, const std::vector<int>& ri,
                          const std::vector<int>& ci) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ri.size()),
                      static_cast<Eigen::Index>(ci.size()));
  for (std::size_t i = 0; i < ri.size(); ++i)
    for (std::size_t j = 0; j < ci.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          M(ri[i], ci[j]);
  return out;
}

Eigen::VectorXd entries_of(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[idx[i]];
  return out;
}

// Gradient of the convex layered objective
//   (1/(2 n2)) || (n/n1) A(I2,I1) X(I1,:) w - y(I2) ||^2.
Eigen::VectorXd convex_layered(const GraphProblem& problem,
                               const Eigen::VectorXd& w,
                               const std::vector<int>& i1,
                               const std::vector<int>& i2) {
  const double n = static_cast<double>(problem.n());
  const double n1 = static_cast<double>(i1.size());
  const double n2 = static_cast<double>(i2.size());
  const Eigen::MatrixXd M =
      (n / n1) * submatrix(problem.A(), i2, i1) * rows_of(problem.X(), i1);
  return M.transpose() * (M * w - entries_of(problem.y(), i2)) / n2;
}

// Gradient of the nonconvex layered objective
//   (1/(2 n3)) || (n/n2) A(I3,I2) sigma((n/n1) A(I2,I1) X(I1,:) W1) W2 - y(I3) ||^2,
// backpropagated through sigma analytically.
Eigen::VectorXd nonconvex_layered(const GraphProblem& problem,
                                  const Eigen::VectorXd& w,
                                  const std::vector<int>& i1,
                                  const std::vector<int>& i2,
                                  const std::vector<int>& i3) {
  const double n = static_cast<double>(problem.n());
  const double n1 = static_cast<double>(i1.size());
  const double n2 = static_cast<double>(i2.size());
  const double n3 = static_cast<double>(i3.size());
  const auto W1 = problem.w1_of(w);
  const auto W2 = problem.w2_of(w);
  const Eigen::MatrixXd U =
      (n / n1) * submatrix(problem.A(), i2, i1) * rows_of(problem.X(), i1);
  const Eigen::MatrixXd Z = U * W1;
  const Eigen::MatrixXd H = sigmoid(Z);
  const Eigen::MatrixXd B = (n / n2) * submatrix(problem.A(), i3, i2);
  const Eigen::VectorXd r = B * (H * W2) - entries_of(problem.y(), i3);
  const Eigen::VectorXd Br = B.transpose() * r;
  const Eigen::MatrixXd gate =
      (Br * W2.transpose())
          .cwiseProduct(H.cwiseProduct(
              Eigen::MatrixXd::Ones(H.rows(), H.cols()) - H));
  const Eigen::MatrixXd dW1 = U.transpose() * gate / n3;
  const Eigen::VectorXd dW2 = H.transpose() * Br / n3;
  Eigen::VectorXd g(problem.dim());
  const Eigen::Index k = problem.d() * problem.d2();
  g.head(k) = Eigen::Map<const Eigen::VectorXd>(dW1.data(), k);
  g.tail(problem.d2()) = dW2;
  return g;
}

}  // namespace

Eigen::VectorXd layered_gradient(const GraphProblem& problem,
                                 const Eigen::VectorXd& w,
                                 std::span<const int> i1,
                                 std::span<const int> i2,
                                 std::span<const int> i3) {
  const std::vector<int> v1(i1.begin(), i1.end());
  const std::vector<int> v2(i2.begin(), i2.end());
  if (problem.kind() == ProblemKind::kConvex) {
    return convex_layered(problem, w, v1, v2);
  }
  const std::vector<int> v3(i3.begin(), i3.end());
  return nonconvex_layered(problem, w, v1, v2, v3);
}

void EstimatorSpec::validate(const GraphProblem& problem) const {
  if (mode == EstimatorMode::kExact) return;
  const int n = problem.n();
  auto check = [n](int count, const char* name) {
    if (count < 1 || count > n) {
      throw std::invalid_argument(std::string("EstimatorSpec: ") + name +
                                  " must lie in [1, n]");
    }
  };
  if (problem.kind() == ProblemKind::kConvex) {
    if (mode == EstimatorMode::kLayeredConsistent) check(n1, "n1");
    check(n2, "n2");
  } else {
    if (mode == EstimatorMode::kLayeredConsistent) {
      check(n1, "n1");
      check(n2, "n2");
    }
    check(n3, "n3");
  }
}

GradientSample estimate_gradient(const EstimatorSpec& spec,
                                 const GraphProblem& problem,
                                 const Eigen::VectorXd& w, std::uint64_t seed) {
  spec.validate(problem);
  GradientSample out;
  out.draw_seed = seed;
  const int n = problem.n();
  if (spec.mode == EstimatorMode::kExact) {
    out.g = problem.gradient(w);
    out.n1 = out.n2 = out.n3 = n;
    if (problem.kind() == ProblemKind::kConvex) out.n3 = 0;
    return out;
  }
  CounterRng rng(seed, stream::kEstimator);
  const bool full_inner = spec.mode == EstimatorMode::kMinibatchUnbiased;
  if (problem.kind() == ProblemKind::kConvex) {
    const std::vector<int> i1 =
        full_inner ? all_indices(n) : draw_layer(rng, n, spec.n1, spec.replacement);
    const std::vector<int> i2 = draw_layer(rng, n, spec.n2, spec.replacement);
    out.g = convex_layered(problem, w, i1, i2);
    out.n1 = static_cast<int>(i1.size());
    out.n2 = static_cast<int>(i2.size());
  } else {
    const std::vector<int> i1 =
        full_inner ? all_indices(n) : draw_layer(rng, n, spec.n1, spec.replacement);
    const std::vector<int> i2 =
        full_inner ? all_indices(n) : draw_layer(rng, n, spec.n2, spec.replacement);
    const std::vector<int> i3 = draw_layer(rng, n, spec.n3, spec.replacement);
    out.g = nonconvex_layered(problem, w, i1, i2, i3);
    out.n1 = static_cast<int>(i1.size());
    out.n2 = static_cast<int>(i2.size());
    out.n3 = static_cast<int>(i3.size());
  }
  if (!out.g.allFinite()) {
    throw std::runtime_error("estimate_gradient: non-finite draw");
  }
  return out;
}

double estimator_mse(const EstimatorSpec& spec, const GraphProblem& problem,
                     const Eigen::VectorXd& w, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimator_mse: trials < 1");
  const Eigen::VectorXd full = problem.gradient(w);
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto sample = estimate_gradient(
        spec, problem, w, CounterRng::derive(seed, static_cast<std::uint64_t>(t)));
    acc += (sample.g - full).squaredNorm();
  }
  return acc / static_cast<double>(trials);
}

TailEstimate empirical_tail(const EstimatorSpec& spec,
                            const GraphProblem& problem,
                            const Eigen::VectorXd& w, double delta,
                            std::span<const int> n_grid, int trials,
                            std::uint64_t seed) {
  if (delta <= 0.0) throw std::invalid_argument("empirical_tail: delta <= 0");
  if (trials < 1) throw std::invalid_argument("empirical_tail: trials < 1");
  const Eigen::VectorXd full = problem.gradient(w);
  const double full_norm = full.norm();
  if (full_norm == 0.0) {
    throw std::invalid_argument(
        "empirical_tail: grad f(w) = 0, relative threshold undefined");
  }
  TailEstimate est;
  est.delta = delta;
  est.trials = trials;
  std::uint64_t grid_pos = 0;
  for (const int N : n_grid) {
    EstimatorSpec s = spec;
    s.n1 = N;
    if (problem.kind() == ProblemKind::kNonconvex) s.n2 = N;
    int exceed = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t draw_seed = CounterRng::derive(
          seed, grid_pos * static_cast<std::uint64_t>(trials) +
                    static_cast<std::uint64_t>(t));
      const auto sample = estimate_gradient(s, problem, w, draw_seed);
      if ((sample.g - full).norm() >= delta * full_norm) ++exceed;
    }
    est.points.push_back(
        {N, static_cast<double>(exceed) / static_cast<double>(trials)});
    ++grid_pos;
  }
  // Fit log p = log C - tau N on points with p strictly inside (0, 1).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& pt : est.points) {
    if (pt.p_hat <= 0.0 || pt.p_hat >= 1.0) continue;
    const double x = static_cast<double>(pt.N);
    const double y = std::log(pt.p_hat);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom > 0.0) {
      const double slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
      const double intercept = (sy - slope * sx) / static_cast<double>(m);
      est.tau_hat = std::max(0.0, -slope);
      est.c_hat = std::exp(intercept);
      est.fit_ok = est.tau_hat > 0.0;
    }
  }
  return est;
}

}  // namespace csgd
