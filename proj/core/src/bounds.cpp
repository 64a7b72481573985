#include "csgd/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csgd {

namespace {

double sq(double x) { return x * x; }

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string("bound_value: missing or "
                                            "nonpositive constant ") +
                                name);
  }
}

void require_k(int k, int lo, const char* theorem) {
  if (k < lo) {
    throw std::invalid_argument(std::string("bound_value: ") + theorem +
                                " is stated for k >= " + std::to_string(lo));
  }
}

}  // namespace

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kT2Iterate: return "T2_iterate";
    case TheoremId::kT2Average: return "T2_average";
    case TheoremId::kT3Smooth: return "T3_smooth";
    case TheoremId::kT4Convex: return "T4_convex";
    case TheoremId::kT5Nonconvex: return "T5_nonconvex";
    case TheoremId::kT10Iterate: return "T10_iterate";
    case TheoremId::kT10Average: return "T10_average";
    case TheoremId::kT11Smooth: return "T11_smooth";
    case TheoremId::kT12Convex: return "T12_convex";
    case TheoremId::kT13Nonconvex: return "T13_nonconvex";
  }
  return "unknown";
}

std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (TheoremId id :
       {TheoremId::kT2Iterate, TheoremId::kT2Average, TheoremId::kT3Smooth,
        TheoremId::kT4Convex, TheoremId::kT5Nonconvex, TheoremId::kT10Iterate,
        TheoremId::kT10Average, TheoremId::kT11Smooth, TheoremId::kT12Convex,
        TheoremId::kT13Nonconvex}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

double bound_value(TheoremId theorem, const BoundConstants& consts, int k) {
  const double G = consts.G;
  const double l = consts.l;
  const double L = consts.L;
  const double D = consts.D;
  const double c = consts.c;
  const double Df = consts.d_f;
  const double kk = static_cast<double>(k);

  // The rho/delta factors are combined first so that a zero factor
  // leaves the remaining expression identical to the unconditional one.
  switch (theorem) {
    case TheoremId::kT2Iterate:
      require_positive(G, "G");
      require_positive(l, "l");
      require_k(k, 3, "T2_iterate");
      return sq(G) * 1.0 / (sq(l) * kk);
    case TheoremId::kT2Average:
      require_positive(G, "G");
      require_positive(l, "l");
      require_k(k, 1, "T2_average");
      return (sq(G) * (1.0 + std::log(kk)) / (2.0 * kk)) * (1.0 / l);
    case TheoremId::kT3Smooth:
      require_positive(G, "G");
      require_positive(l, "l");
      require_positive(L, "L");
      require_k(k, 3, "T3_smooth");
      return (L / 2.0) * (sq(G) * 1.0 / (sq(l) * kk));
    case TheoremId::kT4Convex:
      require_positive(G, "G");
      require_positive(D, "D");
      require_positive(c, "c");
      require_k(k, 1, "T4_convex");
      return 0.5 / std::sqrt(kk) *
             ((1.0 / c) * sq(D) + sq(G) * (c * std::sqrt(1.0 + 1.0 / kk)));
    case TheoremId::kT5Nonconvex:
      require_positive(G, "G");
      require_positive(L, "L");
      require_positive(Df, "D_f");
      require_k(k, 1, "T5_nonconvex");
      return L * G * Df / std::sqrt(kk);
    case TheoremId::kT10Iterate:
    case TheoremId::kT11Smooth: {
      require_positive(G, "G");
      require_positive(l, "l");
      require_k(k, 3, "T10/T11");
      const double rho = consts.rho;
      const double d = rho / kk;  // delta = rho / T
      if (!(rho < l)) {
        throw std::invalid_argument("bound_value: T10/T11 require rho < l");
      }
      const double num = sq(1.0 + d) + rho * (l - d);
      const double core = sq(G) * num / (sq(l - d) * kk);
      if (theorem == TheoremId::kT10Iterate) return core;
      require_positive(L, "L");
      return (L / 2.0) * core;
    }
    case TheoremId::kT10Average: {
      require_positive(G, "G");
      require_positive(l, "l");
      require_k(k, 1, "T10_average");
      const double rho = consts.rho;
      const double d = rho / kk;
      if (!(rho < l)) {
        throw std::invalid_argument("bound_value: T10 requires rho < l");
      }
      const double log1k = 1.0 + std::log(kk);
      return (sq(G) * log1k / (2.0 * kk)) *
             (rho / log1k + sq(1.0 + d) * (1.0 / (l - d)));
    }
    case TheoremId::kT12Convex: {
      require_positive(G, "G");
      require_positive(D, "D");
      require_positive(c, "c");
      require_k(k, 1, "T12_convex");
      const double rho = consts.rho;
      const double d = rho / std::sqrt(kk);  // delta = rho / sqrt(T)
      return 0.5 / std::sqrt(kk) *
             ((1.0 / c + rho) * sq(D) +
              sq(G) * (rho + (c * sq(1.0 + d)) * std::sqrt(1.0 + 1.0 / kk)));
    }
    case TheoremId::kT13Nonconvex: {
      require_positive(G, "G");
      require_positive(L, "L");
      require_positive(Df, "D_f");
      require_k(k, 1, "T13_nonconvex");
      const double delta = consts.delta;
      if (!(delta >= 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "bound_value: T13 requires delta in [0, 1)");
      }
      return (1.0 + delta) * L * G * Df / ((1.0 - delta) * std::sqrt(kk));
    }
  }
  throw std::logic_error("bound_value: unknown theorem");
}

double d_f(double f_w1, double f_star, double L) {
  if (f_w1 < f_star) {
    throw std::invalid_argument("d_f: objective gap must be nonnegative");
  }
  if (!(L > 0.0)) throw std::invalid_argument("d_f: L must be positive");
  return std::sqrt(2.0 * (f_w1 - f_star) / L);
}

int required_sample_size(double tau_at_delta, int T, double C, double epsilon,
                         int n_max) {
  if (!(tau_at_delta > 0.0)) {
    throw std::invalid_argument(
        "required_sample_size: tau must be positive (unusable tail fit)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("required_sample_size: epsilon not in (0,1)");
  }
  if (!(C > 0.0)) throw std::invalid_argument("required_sample_size: C <= 0");
  if (T < 1) throw std::invalid_argument("required_sample_size: T < 1");
  if (n_max < 1) throw std::invalid_argument("required_sample_size: n_max < 1");
  const double raw =
      std::log(static_cast<double>(T) * C / epsilon) / tau_at_delta;
  const double ceiled = std::ceil(raw);
  int N = ceiled < 1.0 ? 1 : static_cast<int>(ceiled);
  if (N > n_max) N = n_max;
  return N;
}

}  // namespace csgd
