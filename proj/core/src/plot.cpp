#include "csgd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csgd {

namespace {

constexpr double kWidth = 720, kHeight = 520;
constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 50;

struct LogExtent {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
};

}  // namespace

PlotSeries reference_line(const std::vector<double>& ks, double c0,
                          double exponent, const std::string& label) {
  PlotSeries s;
  s.label = label;
  s.dashed = true;
  s.x = ks;
  s.y.reserve(ks.size());
  for (double k : ks) s.y.push_back(c0 * std::pow(k, exponent));
  return s;
}

void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::filesystem::path& path) {
  bool any_point = false;
  LogExtent e;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("emit_plot: series size mismatch");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      any_point = true;
      e.xmin = std::min(e.xmin, std::log10(s.x[i]));
      e.xmax = std::max(e.xmax, std::log10(s.x[i]));
      e.ymin = std::min(e.ymin, std::log10(s.y[i]));
      e.ymax = std::max(e.ymax, std::log10(s.y[i]));
    }
  }
  if (!any_point) throw std::invalid_argument("emit_plot: no plottable data");
  if (e.xmax == e.xmin) e.xmax = e.xmin + 1;
  if (e.ymax == e.ymin) e.ymax = e.ymin + 1;

  const auto px = [&](double lx) {
    return kLeft + (lx - e.xmin) / (e.xmax - e.xmin) * (kWidth - kLeft - kRight);
  };
  const auto py = [&](double ly) {
    return kHeight - kBottom -
           (ly - e.ymin) / (e.ymax - e.ymin) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\">" << title << "</text>\n";
  // Axes.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom
      << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  // Decade ticks.
  for (int dec = static_cast<int>(std::ceil(e.xmin));
       dec <= static_cast<int>(std::floor(e.xmax)); ++dec) {
    const double x = px(dec);
    svg << "<line x1=\"" << x << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << x << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 20
        << "\" text-anchor=\"middle\" font-size=\"11\">1e" << dec
        << "</text>\n";
  }
  for (int dec = static_cast<int>(std::ceil(e.ymin));
       dec <= static_cast<int>(std::floor(e.ymax)); ++dec) {
    const double y = py(dec);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << dec << "</text>\n";
  }
  // Curves: one <polyline> per series.
  int legend_row = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      svg << px(std::log10(s.x[i])) << ',' << py(std::log10(s.y[i])) << ' ';
    }
    svg << "\"/>\n";
    const double ly = kTop + 16 + 18 * legend_row;
    svg << "<line x1=\"" << kWidth - kRight - 160 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kRight - 130 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << "/>\n";
    svg << "<text x=\"" << kWidth - kRight - 124 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << s.label << "</text>\n";
    ++legend_row;
  }
  svg << "</svg>\n";

  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open: " + path.string());
  out << svg.str();
}

}  // namespace csgd
