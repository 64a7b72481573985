#pragma once

#include <optional>
#include <string_view>

namespace csgd {

// One theorem-specific convergence bound. The *_iterate / *_average /
// *_smooth suffixes name the bounded quantity: squared iterate distance,
// running-average objective gap, and objective gap under smoothness.
// T10..T13 are the high-probability counterparts of T2..T5; they are
// evaluated at the horizon T (passed as k).
enum class TheoremId {
  kT2Iterate,
  kT2Average,
  kT3Smooth,
  kT4Convex,
  kT5Nonconvex,
  kT10Iterate,
  kT10Average,
  kT11Smooth,
  kT12Convex,
  kT13Nonconvex,
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view name);

struct BoundConstants {
  double G = 0.0;      // gradient-norm bound
  double l = 0.0;      // strong-convexity modulus
  double L = 0.0;      // smoothness modulus
  double D = 0.0;      // feasible-region diameter (2 * ball radius)
  double c = 0.0;      // inverse-sqrt step constant
  double d_f = 0.0;    // nonconvex step constant
  double rho = 0.0;    // high-probability factor, T10/T11/T12
  double delta = 0.0;  // high-probability factor, T13
  int T = 0;           // horizon, high-probability and constant-step rules
};

// Closed-form right-hand side of the chosen theorem at iteration (or
// horizon) k. Validity ranges are enforced: k >= 3 for the strongly
// convex iterate/smooth bounds, k >= 1 elsewhere. The floating-point
// expressions are arranged so that setting rho = delta = 0 reproduces
// the corresponding unconditional bound bit for bit.
double bound_value(TheoremId theorem, const BoundConstants& consts, int k);

// D_f = sqrt(2 (f(w1) - f*) / L).
double d_f(double f_w1, double f_star, double L);

// Smallest per-layer sample size N with T C exp(-N tau) <= epsilon,
// i.e. ceil(log(T C / epsilon) / tau), clamped to [1, n_max].
int required_sample_size(double tau_at_delta, int T, double C, double epsilon,
                         int n_max);

}  // namespace csgd
