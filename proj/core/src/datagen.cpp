#include "csgd/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "csgd/rng.hpp"

namespace csgd {

MixtureParams MixtureParams::defaults(int d) {
  MixtureParams m;
  m.sd1.resize(d);
  for (int i = 0; i < d; ++i) m.sd1[i] = static_cast<double>(i + 1);
  m.sd2 = Eigen::VectorXd::Constant(d, 2.0);
  return m;
}

Eigen::MatrixXd gen_adjacency(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_adjacency: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("gen_adjacency: p must lie in [0, 1]");
  }
  CounterRng rng(seed, stream::kAdjacency);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  // One presence draw and (if present) one weight draw per unordered
  // pair, in fixed (i, j) order. The weight is assigned to both
  // triangles, so A is symmetric by construction.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // uniform() is strictly inside (0, 1), so p = 0 never fires and
      // p = 1 always does.
      if (rng.uniform() < p) {
        const double w = rng.uniform() * inv_n;  // in (0, 1/n)
        A(i, j) = w;
        A(j, i) = w;
      }
    }
  }
  return A;
}

Eigen::MatrixXd gen_features(int n, int d, const MixtureParams& mixture,
                             std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_features: bad size");
  if (mixture.sd1.size() != d || mixture.sd2.size() != d) {
    throw std::invalid_argument("gen_features: mixture dimension mismatch");
  }
  if (std::abs(mixture.t1 + mixture.t2 - 1.0) > 1e-12) {
    throw std::invalid_argument("gen_features: mixture weights must sum to 1");
  }
  if ((mixture.sd1.array() <= 0.0).any() || (mixture.sd2.array() <= 0.0).any()) {
    throw std::invalid_argument("gen_features: nonpositive variance");
  }
  CounterRng rng(seed, stream::kFeatures);
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i) {
    const bool first = rng.uniform() < mixture.t1;
    const double mu = first ? mixture.mu1 : mixture.mu2;
    const Eigen::VectorXd& sd = first ? mixture.sd1 : mixture.sd2;
    for (int j = 0; j < d; ++j) X(i, j) = mu + sd[j] * rng.normal();
  }
  return X;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

GroundTruth gen_ground_truth(ProblemKind kind, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& X, int d2,
                             std::uint64_t seed) {
  const auto n = A.rows();
  if (A.cols() != n || X.rows() != n) {
    throw std::invalid_argument("gen_ground_truth: dimension mismatch");
  }
  const auto d = X.cols();
  CounterRng rng(seed, stream::kGroundTruth);
  GroundTruth gt;
  if (kind == ProblemKind::kConvex) {
    Eigen::VectorXd w(d);
    for (Eigen::Index j = 0; j < d; ++j) w[j] = rng.normal();
    gt.w_star = w;
    gt.y = A * (X * w);
  } else {
    if (d2 < 1) throw std::invalid_argument("gen_ground_truth: d2 must be >= 1");
    Eigen::MatrixXd W1(d, d2);
    for (Eigen::Index j = 0; j < d2; ++j)
      for (Eigen::Index i = 0; i < d; ++i) W1(i, j) = rng.normal();
    Eigen::VectorXd W2(d2);
    for (int j = 0; j < d2; ++j) W2[j] = rng.normal();
    gt.w_star.resize(d * d2 + d2);
    gt.w_star.head(d * d2) = Eigen::Map<Eigen::VectorXd>(W1.data(), d * d2);
    gt.w_star.tail(d2) = W2;
    gt.y = A * (sigmoid(A * X * W1) * W2);
  }
  gt.f_star = 0.0;
  return gt;
}

}  // namespace csgd
