#include "csgd/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace csgd {

RateReport check_rate(std::span<const int> ks, std::span<const double> values,
                      const std::string& metric, double target_slope, int k_lo,
                      int k_hi, double floor) {
  if (ks.size() != values.size()) {
    throw std::invalid_argument("check_rate: ks/values size mismatch");
  }
  if (k_lo >= k_hi) {
    throw std::invalid_argument("check_rate: window requires k_lo < k_hi");
  }
  RateReport report;
  report.metric = metric;
  report.k_lo = k_lo;
  report.k_hi = k_hi;
  report.target_slope = target_slope;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const int k = ks[i];
    if (k < k_lo || k > k_hi) continue;
    const double v = values[i];
    if (!(v > floor)) {
      ++report.excluded_points;
      if (report.floor_cutoff == 0) report.floor_cutoff = k;
      continue;
    }
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    ++m;
  }
  if (m < 10) {
    throw std::invalid_argument(
        "check_rate: fewer than 10 usable points in window");
  }
  const double mm = static_cast<double>(m);
  const double denom = mm * sxx - sx * sx;
  report.slope = (mm * sxy - sx * sy) / denom;
  report.intercept = (sy - report.slope * sx) / mm;
  const double ss_tot = syy - sy * sy / mm;
  const double ss_res =
      ss_tot - report.slope * (sxy - sx * sy / mm);
  report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  report.used_points = m;
  report.pass = report.slope <= target_slope;
  return report;
}

}  // namespace csgd
