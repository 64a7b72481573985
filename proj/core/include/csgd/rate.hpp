#pragma once

#include <span>
#include <string>

namespace csgd {

struct RateReport {
  std::string metric;
  int k_lo = 0;
  int k_hi = 0;
  double slope = 0.0;
  double intercept = 0.0;  // of log(metric) vs log(k)
  double r_squared = 0.0;
  double target_slope = 0.0;
  int used_points = 0;
  int excluded_points = 0;  // rows at or below the roundoff floor
  int floor_cutoff = 0;     // first k where the metric fell below the floor; 0 if never
  bool pass = false;
};

// Metric values below this are treated as numerical roundoff and
// excluded from slope fits.
inline constexpr double kRoundoffFloor = 1e-24;

// Least-squares fit of log(metric) vs log(k) over k in [k_lo, k_hi].
// ks and values are parallel arrays (ks ascending). Rows with values
// at or below the roundoff floor are excluded and counted. Passes iff
// slope <= target_slope. Throws if fewer than 10 usable points remain.
RateReport check_rate(std::span<const int> ks, std::span<const double> values,
                      const std::string& metric, double target_slope, int k_lo,
                      int k_hi, double floor = kRoundoffFloor);

}  // namespace csgd
