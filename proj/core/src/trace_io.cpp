#include "csgd/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csgd {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "k,gamma_k,dist_sq,f_gap,avg_gap,grad_norm_sq,min_grad_norm_sq,"
         "proj_active\n";
  for (const auto& row : trace.rows) {
    out << row.k << ',' << format_double(row.gamma) << ','
        << format_double(row.dist_sq) << ',' << format_double(row.f_gap) << ','
        << format_double(row.avg_gap) << ','
        << format_double(row.grad_norm_sq) << ','
        << format_double(row.min_grad_norm_sq) << ','
        << (row.proj_active ? 1 : 0) << '\n';
  }
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty trace file: " + path.string());
  }
  RunTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    TraceRow row;
    char comma;
    int proj = 0;
    ss >> row.k >> comma >> row.gamma >> comma >> row.dist_sq >> comma >>
        row.f_gap >> comma >> row.avg_gap >> comma >> row.grad_norm_sq >>
        comma >> row.min_grad_norm_sq >> comma >> proj;
    if (ss.fail()) {
      throw std::runtime_error("malformed trace row in " + path.string());
    }
    row.proj_active = proj != 0;
    trace.rows.push_back(row);
  }
  return trace;
}

void write_matrix_csv(const Eigen::MatrixXd& m,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_bound_csv(const std::vector<int>& ks,
                     const std::vector<double>& values,
                     const std::string& theorem,
                     const std::filesystem::path& path) {
  if (ks.size() != values.size()) {
    throw std::invalid_argument("write_bound_csv: size mismatch");
  }
  auto out = open_out(path);
  out << "k,value,theorem\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out << ks[i] << ',' << format_double(values[i]) << ',' << theorem << '\n';
  }
}

void write_tail_csv(const TailEstimate& tail,
                    const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "N,delta,p_hat,trials\n";
  for (const auto& pt : tail.points) {
    out << pt.N << ',' << format_double(tail.delta) << ','
        << format_double(pt.p_hat) << ',' << tail.trials << '\n';
  }
}

}  // namespace csgd
