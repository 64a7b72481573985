#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "csgd/estimator.hpp"
#include "csgd/optimizer.hpp"

namespace csgd {

// Decimal formatting with 17 significant digits; round-trips doubles.
std::string format_double(double v);

// Columns, in order:
// k,gamma_k,dist_sq,f_gap,avg_gap,grad_norm_sq,min_grad_norm_sq,proj_active
void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path);
RunTrace read_trace_csv(const std::filesystem::path& path);

// Row-major matrix dump for cross-language comparison.
void write_matrix_csv(const Eigen::MatrixXd& m,
                      const std::filesystem::path& path);

// Columns: k,value,theorem
void write_bound_csv(const std::vector<int>& ks,
                     const std::vector<double>& values,
                     const std::string& theorem,
                     const std::filesystem::path& path);

// Columns: N,delta,p_hat,trials
void write_tail_csv(const TailEstimate& tail,
                    const std::filesystem::path& path);

}  // namespace csgd
