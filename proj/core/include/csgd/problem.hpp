#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "csgd/datagen.hpp"

namespace csgd {

// One synthetic graph-convolution instance together with its objective.
//
// Convex:     f(w)        = ||A X w - y||^2 / (2n)
// Nonconvex:  f(W1, W2)   = ||A sigma(A X W1) W2 - y||^2 / (2n)
//
// Parameters are handled as one flattened vector; for the nonconvex kind
// it is vec(W1) followed by W2. The feasible region is the ball
// ||w|| <= radius with radius 100*d (convex) or 100*(d+1)*d2 (nonconvex).
class GraphProblem {
 public:
  GraphProblem(ProblemKind kind, Eigen::MatrixXd A, Eigen::MatrixXd X,
               GroundTruth truth, int d2 = 0);

  ProblemKind kind() const { return kind_; }
  int n() const { return static_cast<int>(A_.rows()); }
  int d() const { return static_cast<int>(X_.cols()); }
  int d2() const { return d2_; }
  int dim() const { return static_cast<int>(w_star_.size()); }
  double radius() const { return radius_; }
  double f_star() const { return 0.0; }  // planted, exact by construction

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& X() const { return X_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::VectorXd& w_star() const { return w_star_; }
  // Cached product A X (the "propagated features").
  const Eigen::MatrixXd& AX() const { return AX_; }

  double objective(const Eigen::VectorXd& w) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const;

  // Views of the flattened parameter vector as W1 (d x d2) and W2 (d2).
  Eigen::Map<const Eigen::MatrixXd> w1_of(const Eigen::VectorXd& w) const;
  Eigen::Map<const Eigen::VectorXd> w2_of(const Eigen::VectorXd& w) const;

 private:
  void check_dim(const Eigen::VectorXd& w) const;

  ProblemKind kind_;
  Eigen::MatrixXd A_;
  Eigen::MatrixXd X_;
  Eigen::MatrixXd AX_;
  Eigen::VectorXd y_;
  Eigen::VectorXd w_star_;
  int d2_;
  double radius_;
};

struct CurvatureConstants {
  std::optional<double> l;  // strong-convexity modulus; absent for nonconvex
  double L = 0.0;           // smoothness modulus (estimated for nonconvex)
};

// Convex kind: l = sigma_min(AX)^2 / n, L = sigma_max(AX)^2 / n via SVD.
// A rank-deficient AX yields l = 0; callers must not build a 1/(lk)
// schedule from that.
CurvatureConstants curvature_constants(const GraphProblem& problem);

// Empirical Lipschitz constant of the gradient: max ||g(w)-g(u)||/||w-u||
// over random pairs inside the feasible ball, inflated by 1.5. Used for
// the nonconvex kind, where no closed form is available.
double estimate_smoothness(const GraphProblem& problem, int pairs,
                           std::uint64_t seed);

// Convenience: generate a full instance from scalar parameters.
GraphProblem make_problem(ProblemKind kind, int n, double p, int d, int d2,
                          std::uint64_t seed);

}  // namespace csgd
