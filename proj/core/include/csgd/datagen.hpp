#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace csgd {

// Gaussian mixture for feature rows: t1*N(mu1, Sigma1) + t2*N(mu2, Sigma2)
// with diagonal covariances given by per-coordinate standard deviations.
struct MixtureParams {
  double t1 = 0.3;
  double mu1 = 0.0;
  Eigen::VectorXd sd1;  // per-coordinate std dev, component 1
  double t2 = 0.7;
  double mu2 = 1.0;
  Eigen::VectorXd sd2;  // per-coordinate std dev, component 2

  // Default mixture for dimension d: sd1 = (1, 2, ..., d), sd2 = 2.
  static MixtureParams defaults(int d);
};

struct GroundTruth {
  Eigen::VectorXd w_star;  // flattened parameters
  Eigen::VectorXd y;       // targets, length n
  double f_star = 0.0;     // exact by construction
};

enum class ProblemKind { kConvex, kNonconvex };

// Undirected Erdos-Renyi graph with one uniform weight in (0, 1/n) per
// sampled edge; symmetric, zero diagonal. Deterministic given seed.
Eigen::MatrixXd gen_adjacency(int n, double p, std::uint64_t seed);

// n rows drawn i.i.d. from the mixture. Deterministic given seed.
Eigen::MatrixXd gen_features(int n, int d, const MixtureParams& mixture,
                             std::uint64_t seed);

// Planted optimum and matching targets. Convex: w* ~ N(0,I), y = A X w*.
// Nonconvex: W1*, W2* ~ N(0,I), y = A sigma(A X W1*) W2*; w_star is
// vec(W1*) followed by W2*. d2 is the hidden width (nonconvex only).
GroundTruth gen_ground_truth(ProblemKind kind, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& X, int d2,
                             std::uint64_t seed);

// Numerically stable logistic sigmoid, branched on the sign of z.
double sigmoid(double z);
Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z);

}  // namespace csgd
