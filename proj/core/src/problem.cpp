#include "csgd/problem.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csgd/rng.hpp"

namespace csgd {

GraphProblem::GraphProblem(ProblemKind kind, Eigen::MatrixXd A,
                           Eigen::MatrixXd X, GroundTruth truth, int d2)
    : kind_(kind),
      A_(std::move(A)),
      X_(std::move(X)),
      y_(std::move(truth.y)),
      w_star_(std::move(truth.w_star)),
      d2_(d2) {
  const auto n = A_.rows();
  if (A_.cols() != n || X_.rows() != n || y_.size() != n) {
    throw std::invalid_argument("GraphProblem: dimension mismatch");
  }
  const auto d = X_.cols();
  if (kind_ == ProblemKind::kConvex) {
    if (w_star_.size() != d) {
      throw std::invalid_argument("GraphProblem: w_star length must be d");
    }
    radius_ = 100.0 * static_cast<double>(d);
  } else {
    if (d2_ < 1) throw std::invalid_argument("GraphProblem: d2 must be >= 1");
    if (w_star_.size() != d * d2_ + d2_) {
      throw std::invalid_argument("GraphProblem: w_star length must be d*d2+d2");
    }
    radius_ = 100.0 * static_cast<double>(d + 1) * static_cast<double>(d2_);
  }
  AX_ = A_ * X_;
}

void GraphProblem::check_dim(const Eigen::VectorXd& w) const {
  if (w.size() != dim()) {
    throw std::invalid_argument("GraphProblem: parameter dimension mismatch");
  }
}

Eigen::Map<const Eigen::MatrixXd> GraphProblem::w1_of(
    const Eigen::VectorXd& w) const {
  return {w.data(), X_.cols(), d2_};
}

Eigen::Map<const Eigen::VectorXd> GraphProblem::w2_of(
    const Eigen::VectorXd& w) const {
  return {w.data() + X_.cols() * d2_, d2_};
}

double GraphProblem::objective(const Eigen::VectorXd& w) const {
  check_dim(w);
  const double n = static_cast<double>(A_.rows());
  if (kind_ == ProblemKind::kConvex) {
    return (AX_ * w - y_).squaredNorm() / (2.0 * n);
  }
  const Eigen::MatrixXd H = sigmoid(AX_ * w1_of(w));
  const Eigen::VectorXd r = A_ * (H * w2_of(w)) - y_;
  return r.squaredNorm() / (2.0 * n);
}

Eigen::VectorXd GraphProblem::gradient(const Eigen::VectorXd& w) const {
  check_dim(w);
  const double n = static_cast<double>(A_.rows());
  if (kind_ == ProblemKind::kConvex) {
    return AX_.transpose() * (AX_ * w - y_) / n;
  }
  const auto W1 = w1_of(w);
  const auto W2 = w2_of(w);
  const Eigen::MatrixXd Z = AX_ * W1;
  const Eigen::MatrixXd H = sigmoid(Z);
  const Eigen::VectorXd r = A_ * (H * W2) - y_;
  const Eigen::VectorXd Ar = A_.transpose() * r;
  // dW1 = (AX)^T [ (A^T r W2^T) .* sigma'(Z) ] / n,   sigma' = H (1 - H)
  const Eigen::MatrixXd gate =
      (Ar * W2.transpose()).cwiseProduct(H.cwiseProduct(
          (Eigen::MatrixXd::Ones(H.rows(), H.cols()) - H)));
  const Eigen::MatrixXd dW1 = AX_.transpose() * gate / n;
  const Eigen::VectorXd dW2 = H.transpose() * Ar / n;
  Eigen::VectorXd g(dim());
  g.head(X_.cols() * d2_) =
      Eigen::Map<const Eigen::VectorXd>(dW1.data(), X_.cols() * d2_);
  g.tail(d2_) = dW2;
  return g;
}

CurvatureConstants curvature_constants(const GraphProblem& problem) {
  if (problem.kind() != ProblemKind::kConvex) {
    throw std::invalid_argument(
        "curvature_constants: closed form exists only for the convex kind");
  }
  const double n = static_cast<double>(problem.n());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(problem.AX());
  const auto& s = svd.singularValues();
  CurvatureConstants c;
  c.L = s(0) * s(0) / n;
  const double smin = s(s.size() - 1);
  c.l = smin * smin / n;
  return c;
}

double estimate_smoothness(const GraphProblem& problem, int pairs,
                           std::uint64_t seed) {
  CounterRng rng(seed, stream::kVerify);
  const int dim = problem.dim();
  double max_ratio = 0.0;
  for (int t = 0; t < pairs; ++t) {
    // Points inside the ball at log-spread scales, so both the
    // near-origin regime and the saturated regime are probed.
    const double scale =
        std::min(problem.radius(), std::exp(rng.uniform() * std::log(problem.radius())));
    Eigen::VectorXd w(dim), u(dim);
    for (int i = 0; i < dim; ++i) w[i] = scale * rng.normal();
    for (int i = 0; i < dim; ++i) u[i] = w[i] + 0.1 * scale * rng.normal();
    if (w.norm() > problem.radius()) w *= problem.radius() / w.norm();
    if (u.norm() > problem.radius()) u *= problem.radius() / u.norm();
    const double dn = (w - u).norm();
    if (dn == 0.0) continue;
    const double gn = (problem.gradient(w) - problem.gradient(u)).norm();
    max_ratio = std::max(max_ratio, gn / dn);
  }
  return 1.5 * max_ratio;
}

GraphProblem make_problem(ProblemKind kind, int n, double p, int d, int d2,
                          std::uint64_t seed) {
  Eigen::MatrixXd A = gen_adjacency(n, p, seed);
  Eigen::MatrixXd X = gen_features(n, d, MixtureParams::defaults(d), seed);
  GroundTruth gt = gen_ground_truth(kind, A, X, d2, seed);
  return {kind, std::move(A), std::move(X), std::move(gt), d2};
}

}  // namespace csgd
