#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "csgd/bounds.hpp"
#include "csgd/estimator.hpp"
#include "csgd/optimizer.hpp"

namespace csgd {

// Flat experiment description; every field has a default and a matching
// key in the key=value config format (see parse_config).
struct ExperimentConfig {
  // Problem.
  ProblemKind kind = ProblemKind::kConvex;
  int n = 300;
  double p = 0.3;
  int d = 10;
  int d2 = 5;  // nonconvex hidden width

  // Estimator.
  EstimatorSpec estimator;

  // Schedule.
  StepRule rule = StepRule::kInverseLk;
  double lk_scale = 1.0;
  double c = 1.0;
  double gamma = 0.01;
  double rho = 0.0;
  double delta = 0.0;
  // Gradient bound for the constant_nonconvex / highprob rules, which
  // need G before the run starts; unused otherwise.
  double G = 0.0;

  int T = 3000;
  std::vector<std::uint64_t> seeds = {1};
  std::filesystem::path out_dir = "out";

  // Theoretical curves to emit alongside the traces.
  std::vector<TheoremId> bound_curves;

  // Rate check on the seed-mean trace; empty metric disables it.
  std::string rate_metric;
  double rate_target = -0.8;
  int rate_k_lo = 100;
  int rate_k_hi = 0;  // 0: clamp to T

  bool dump_data = false;  // also write A, X, w*, y as CSV

  void validate() const;
};

// Parses the flat key=value format ('#' starts a comment). Unknown keys
// and malformed values are rejected with the offending key named.
ExperimentConfig parse_config(const std::filesystem::path& path);
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

// Canonical defaults for the four panels of the reference experiment:
// "fig1a" convex exact 1/(lk), "fig1b" convex layered 1/(20lk),
// "fig1c" nonconvex exact gamma=0.01, "fig1d" nonconvex layered.
ExperimentConfig panel_config(const std::string& panel);

std::string to_string(EstimatorMode mode);
std::string to_string(StepRule rule);
std::string to_string(ProblemKind kind);

}  // namespace csgd
