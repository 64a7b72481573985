#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "csgd/config.hpp"
#include "csgd/plot.hpp"
#include "csgd/trace_io.hpp"
#include "doctest.h"

using namespace csgd;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("io: format_double round-trips doubles") {
  for (double v : {0.0, 1.0, -1.5, 1e-300, 3.141592653589793,
                   0.1 + 0.2, 1e17, 123456.789012345678}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("io: trace CSV header and round trip") {
  RunTrace trace;
  for (int k = 1; k <= 5; ++k) {
    TraceRow row;
    row.k = k;
    row.gamma = 0.1 / k;
    row.dist_sq = 1.0 / (k * k);
    row.f_gap = 2.0 / k;
    row.avg_gap = 3.0 / k;
    row.grad_norm_sq = 4.0 / k;
    row.min_grad_norm_sq = 4.0 / k;
    row.proj_active = (k == 2);
    trace.rows.push_back(row);
  }
  const auto path = temp_file("csgd_trace_roundtrip.csv");
  write_trace_csv(trace, path);

  const auto text = slurp(path);
  CHECK(text.rfind("k,gamma_k,dist_sq,f_gap,avg_gap,grad_norm_sq,"
                   "min_grad_norm_sq,proj_active\n", 0) == 0);

  const auto back = read_trace_csv(path);
  REQUIRE(back.rows.size() == trace.rows.size());
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    CHECK(back.rows[i].k == trace.rows[i].k);
    CHECK(back.rows[i].gamma == trace.rows[i].gamma);
    CHECK(back.rows[i].dist_sq == trace.rows[i].dist_sq);
    CHECK(back.rows[i].f_gap == trace.rows[i].f_gap);
    CHECK(back.rows[i].avg_gap == trace.rows[i].avg_gap);
    CHECK(back.rows[i].grad_norm_sq == trace.rows[i].grad_norm_sq);
    CHECK(back.rows[i].min_grad_norm_sq == trace.rows[i].min_grad_norm_sq);
    CHECK(back.rows[i].proj_active == trace.rows[i].proj_active);
  }
  std::filesystem::remove(path);
}

TEST_CASE("io: bound CSV layout") {
  const auto path = temp_file("csgd_bound.csv");
  write_bound_csv({3, 4}, {0.5, 0.25}, "T2_iterate", path);
  const auto text = slurp(path);
  CHECK(text == "k,value,theorem\n3,0.5,T2_iterate\n4,0.25,T2_iterate\n");
  std::filesystem::remove(path);
}

TEST_CASE("config: panel defaults reproduce the reference setups") {
  const auto a = panel_config("fig1a");
  CHECK(a.kind == ProblemKind::kConvex);
  CHECK(a.n == 300);
  CHECK(a.p == 0.3);
  CHECK(a.d == 10);
  CHECK(a.estimator.mode == EstimatorMode::kExact);
  CHECK(a.rule == StepRule::kInverseLk);
  CHECK(a.lk_scale == 1.0);
  CHECK(a.T == 3000);
  CHECK(a.seeds.size() == 16);

  const auto b = panel_config("fig1b");
  CHECK(b.estimator.mode == EstimatorMode::kLayeredConsistent);
  CHECK(b.estimator.n1 == 30);
  CHECK(b.estimator.n2 == 1);
  CHECK(b.lk_scale == 20.0);

  const auto c = panel_config("fig1c");
  CHECK(c.kind == ProblemKind::kNonconvex);
  CHECK(c.d2 == 5);
  CHECK(c.rule == StepRule::kConstant);
  CHECK(c.gamma == 0.01);
  CHECK(c.estimator.mode == EstimatorMode::kExact);

  const auto d = panel_config("fig1d");
  CHECK(d.estimator.mode == EstimatorMode::kLayeredConsistent);
  CHECK(d.estimator.n1 == 30);
  CHECK(d.estimator.n2 == 30);
  CHECK(d.estimator.n3 == 1);

  CHECK_THROWS_AS(panel_config("fig9z"), std::invalid_argument);
}

TEST_CASE("config: key=value files parse with comments and overrides") {
  const auto path = temp_file("csgd_config_test.cfg");
  {
    std::ofstream out(path);
    out << "# reference convex run\n"
        << "kind=convex\n"
        << "n=120\n"
        << "estimator=layered_consistent\n"
        << "n1=12\n"
        << "n2=1  # singleton output draw\n"
        << "schedule=inverse_lk\n"
        << "lk_scale=20\n"
        << "T=500\n"
        << "seeds=1,2,3\n";
  }
  auto config = parse_config(path);
  CHECK(config.kind == ProblemKind::kConvex);
  CHECK(config.n == 120);
  CHECK(config.estimator.mode == EstimatorMode::kLayeredConsistent);
  CHECK(config.estimator.n1 == 12);
  CHECK(config.estimator.n2 == 1);
  CHECK(config.lk_scale == 20.0);
  CHECK(config.T == 500);
  REQUIRE(config.seeds.size() == 3);
  CHECK(config.seeds[2] == 3);

  apply_override(config, "T", "250");
  CHECK(config.T == 250);
  std::filesystem::remove(path);
}

TEST_CASE("config: unknown keys are rejected by name") {
  ExperimentConfig config;
  try {
    apply_override(config, "bogus_key", "1");
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
}

TEST_CASE("config: malformed values name the offending key") {
  ExperimentConfig config;
  try {
    apply_override(config, "T", "not_a_number");
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("T") != std::string::npos);
  }
}

TEST_CASE("plot: one polyline per series") {
  PlotSeries trace;
  trace.label = "dist_sq";
  trace.x = {1, 10, 100, 1000};
  trace.y = {1.0, 0.1, 0.01, 0.001};
  PlotSeries bound = reference_line({1, 10, 100, 1000}, 2.0, -1.0, "O(1/k)");
  bound.dashed = true;

  const auto path = temp_file("csgd_plot_test.svg");
  emit_plot({trace, bound}, "test", path);
  const auto text = slurp(path);
  CHECK(count_occurrences(text, "<polyline") == 2);
  CHECK(text.find("dist_sq") != std::string::npos);
  CHECK(text.find("O(1/k)") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("plot: reference line is an exact power law") {
  const auto line = reference_line({1, 2, 4, 8}, 3.0, -1.0, "ref");
  REQUIRE(line.y.size() == 4);
  CHECK(line.y[0] == 3.0);  // passes through (1, c0)
  for (std::size_t i = 0; i < line.y.size(); ++i) {
    CHECK(line.y[i] == doctest::Approx(3.0 / line.x[i]).epsilon(1e-14));
  }
}

TEST_CASE("plot: empty input is rejected") {
  const auto path = temp_file("csgd_plot_empty.svg");
  CHECK_THROWS_AS(emit_plot({}, "empty", path), std::invalid_argument);
}
