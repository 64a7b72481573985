#pragma once

#include <optional>
#include <vector>

#include "csgd/config.hpp"
#include "csgd/rate.hpp"
#include "csgd/trace_io.hpp"

namespace csgd {

struct SeedResult {
  std::uint64_t seed = 0;
  double l = 0.0;      // 0 for nonconvex
  double L = 0.0;      // 0 unless computed
  double G_hat = 0.0;  // max over trace of max(||g_k||, ||grad f(w_k)||)
  double D_f = 0.0;    // 0 unless computed
  bool proj_ever_active = false;
  RunTrace trace;
};

struct ExperimentResult {
  std::vector<SeedResult> seeds;
  // Seed-mean of each metric, row-aligned on k = 1..T.
  std::vector<TraceRow> mean_rows;
  std::optional<RateReport> rate;
  // Conservative constants used for emitted bound curves:
  // G = max over seeds, l = min, L = max.
  BoundConstants bound_constants;
};

// Runs the configured experiment: per seed, generate the instance, run
// SGD, write the trace CSV; then write the seed-mean trace, requested
// bound curves, and a summary file listing every constant used. Seeds
// execute concurrently; aggregation is ordered by seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace csgd
