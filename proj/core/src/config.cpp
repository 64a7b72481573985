#include "csgd/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csgd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: invalid value '" + value +
                              "' for key '" + key + "'");
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) bad(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad(key, value);
  } catch (const std::out_of_range&) {
    bad(key, value);
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) bad(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad(key, value);
  } catch (const std::out_of_range&) {
    bad(key, value);
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  bad(key, value);
}

}  // namespace

std::string to_string(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::kExact: return "exact";
    case EstimatorMode::kMinibatchUnbiased: return "minibatch_unbiased";
    case EstimatorMode::kLayeredConsistent: return "layered_consistent";
  }
  return "unknown";
}

std::string to_string(StepRule rule) {
  switch (rule) {
    case StepRule::kInverseLk: return "inverse_lk";
    case StepRule::kInverseSqrt: return "inverse_sqrt";
    case StepRule::kConstantNonconvex: return "constant_nonconvex";
    case StepRule::kConstant: return "constant";
    case StepRule::kHighProbInverseLk: return "highprob_inverse_lk";
    case StepRule::kHighProbConstantNonconvex:
      return "highprob_constant_nonconvex";
  }
  return "unknown";
}

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::kConvex ? "convex" : "nonconvex";
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  if (key == "kind") {
    if (value == "convex") config.kind = ProblemKind::kConvex;
    else if (value == "nonconvex") config.kind = ProblemKind::kNonconvex;
    else bad(key, value);
  } else if (key == "n") {
    config.n = to_int(key, value);
  } else if (key == "p") {
    config.p = to_double(key, value);
  } else if (key == "d") {
    config.d = to_int(key, value);
  } else if (key == "d2") {
    config.d2 = to_int(key, value);
  } else if (key == "estimator") {
    if (value == "exact") config.estimator.mode = EstimatorMode::kExact;
    else if (value == "minibatch_unbiased")
      config.estimator.mode = EstimatorMode::kMinibatchUnbiased;
    else if (value == "layered_consistent")
      config.estimator.mode = EstimatorMode::kLayeredConsistent;
    else bad(key, value);
  } else if (key == "n1") {
    config.estimator.n1 = to_int(key, value);
  } else if (key == "n2") {
    config.estimator.n2 = to_int(key, value);
  } else if (key == "n3") {
    config.estimator.n3 = to_int(key, value);
  } else if (key == "replacement") {
    config.estimator.replacement = to_bool(key, value);
  } else if (key == "schedule") {
    if (value == "inverse_lk") config.rule = StepRule::kInverseLk;
    else if (value == "inverse_sqrt") config.rule = StepRule::kInverseSqrt;
    else if (value == "constant_nonconvex")
      config.rule = StepRule::kConstantNonconvex;
    else if (value == "constant") config.rule = StepRule::kConstant;
    else if (value == "highprob_inverse_lk")
      config.rule = StepRule::kHighProbInverseLk;
    else if (value == "highprob_constant_nonconvex")
      config.rule = StepRule::kHighProbConstantNonconvex;
    else bad(key, value);
  } else if (key == "lk_scale") {
    config.lk_scale = to_double(key, value);
  } else if (key == "c") {
    config.c = to_double(key, value);
  } else if (key == "gamma") {
    config.gamma = to_double(key, value);
  } else if (key == "rho") {
    config.rho = to_double(key, value);
  } else if (key == "delta") {
    config.delta = to_double(key, value);
  } else if (key == "G") {
    config.G = to_double(key, value);
  } else if (key == "T") {
    config.T = to_int(key, value);
  } else if (key == "seeds") {
    config.seeds.clear();
    for (const auto& s : split(value, ',')) {
      if (s.empty()) bad(key, value);
      config.seeds.push_back(
          static_cast<std::uint64_t>(std::stoull(s)));
    }
    if (config.seeds.empty()) bad(key, value);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "bounds") {
    config.bound_curves.clear();
    if (!value.empty()) {
      for (const auto& s : split(value, ',')) {
        const auto id = theorem_from_string(s);
        if (!id) bad(key, value);
        config.bound_curves.push_back(*id);
      }
    }
  } else if (key == "rate_metric") {
    config.rate_metric = value;
  } else if (key == "rate_target") {
    config.rate_target = to_double(key, value);
  } else if (key == "rate_k_lo") {
    config.rate_k_lo = to_int(key, value);
  } else if (key == "rate_k_hi") {
    config.rate_k_hi = to_int(key, value);
  } else if (key == "dump_data") {
    config.dump_data = to_bool(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path.string());
  }
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value");
    }
    apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: field 'n' must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("config: field 'p' must lie in [0, 1]");
  }
  if (d < 1) throw std::invalid_argument("config: field 'd' must be >= 1");
  if (kind == ProblemKind::kNonconvex && d2 < 1) {
    throw std::invalid_argument("config: field 'd2' must be >= 1");
  }
  if (T < 1) throw std::invalid_argument("config: field 'T' must be >= 1");
  if (seeds.empty()) {
    throw std::invalid_argument("config: field 'seeds' must be nonempty");
  }
  if (!rate_metric.empty() && rate_metric != "dist_sq" &&
      rate_metric != "f_gap" && rate_metric != "avg_gap" &&
      rate_metric != "grad_norm_sq" && rate_metric != "min_grad_norm_sq") {
    throw std::invalid_argument("config: field 'rate_metric' is not a trace "
                                "column");
  }
}

ExperimentConfig panel_config(const std::string& panel) {
  ExperimentConfig c;
  c.seeds.clear();
  for (std::uint64_t s = 1; s <= 16; ++s) c.seeds.push_back(s);
  if (panel == "fig1a") {
    c.kind = ProblemKind::kConvex;
    c.estimator.mode = EstimatorMode::kExact;
    c.rule = StepRule::kInverseLk;
    c.bound_curves = {TheoremId::kT2Iterate};
    c.rate_metric = "dist_sq";
    c.rate_target = -0.8;
  } else if (panel == "fig1b") {
    c.kind = ProblemKind::kConvex;
    c.estimator.mode = EstimatorMode::kLayeredConsistent;
    c.estimator.n1 = 30;
    c.estimator.n2 = 1;
    c.rule = StepRule::kInverseLk;
    c.lk_scale = 20.0;
    c.rate_metric = "dist_sq";
    c.rate_target = -0.8;
  } else if (panel == "fig1c") {
    c.kind = ProblemKind::kNonconvex;
    c.estimator.mode = EstimatorMode::kExact;
    c.rule = StepRule::kConstant;
    c.gamma = 0.01;
    c.rate_metric = "min_grad_norm_sq";
    c.rate_target = -0.5;
  } else if (panel == "fig1d") {
    c.kind = ProblemKind::kNonconvex;
    c.estimator.mode = EstimatorMode::kLayeredConsistent;
    c.estimator.n1 = 30;
    c.estimator.n2 = 30;
    c.estimator.n3 = 1;
    c.rule = StepRule::kConstant;
    c.gamma = 0.01;
    c.rate_metric = "min_grad_norm_sq";
    c.rate_target = -0.5;
  } else {
    throw std::invalid_argument("unknown panel '" + panel +
                                "' (expected fig1a..fig1d)");
  }
  return c;
}

}  // namespace csgd
