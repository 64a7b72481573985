#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace csgd {

struct PlotSeries {
  std::string label;
  std::string color = "black";
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;
};

// Self-contained SVG with log-log axes, one <polyline> per series and a
// legend. Nonpositive values cannot be placed on log axes and are
// dropped point-wise.
void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::filesystem::path& path);

// Reference power law y = c0 * k^exponent sampled on the given ks.
PlotSeries reference_line(const std::vector<double>& ks, double c0,
                          double exponent, const std::string& label);

}  // namespace csgd
