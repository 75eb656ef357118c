#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "tropline/frame_io.hpp"
#include "tropline/sampling.hpp"
#include "tropline/verify.hpp"

using namespace tropline;

namespace {

const CheckResult* find_check(const VerificationReport& report,
                              const std::string& name) {
  for (const CheckResult& c : report.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<SampleSet> small_sets() {
  return {sample_line(Strategy::CoamoebaGrid, 14, 5),
          sample_line(Strategy::SeamCurves, 14, 5)};
}

std::vector<SampleSet> all_strategy_sets() {
  return {sample_line(Strategy::CoamoebaGrid, 14, 5),
          sample_line(Strategy::AmoebaLift, 20, 5),
          sample_line(Strategy::ComplexChart, 14, 5),
          sample_line(Strategy::SeamCurves, 14, 5)};
}

}  // namespace

TEST_CASE("run_suite passes on a small mixed sample family") {
  SuiteOptions opts;
  opts.seed = 5;
  opts.random_points = 2000;
  const VerificationReport report = run_suite(small_sets(), opts);
  for (const CheckResult& c : report.checks) {
    INFO(c.name << " max_residual=" << c.max_residual << " tol=" << c.tolerance
                << " n=" << c.sample_count);
    CHECK(c.pass);
  }
  CHECK(report.overall);
}

TEST_CASE("run_suite passes across all four strategies") {
  SuiteOptions opts;
  opts.seed = 5;
  opts.random_points = 1000;
  const VerificationReport report = run_suite(all_strategy_sets(), opts);
  for (const CheckResult& c : report.checks) {
    INFO(c.name << " max_residual=" << c.max_residual << " tol=" << c.tolerance
                << " n=" << c.sample_count);
    CHECK(c.pass);
  }
  CHECK(report.overall);
}

TEST_CASE("run_suite is deterministic") {
  SuiteOptions opts;
  opts.seed = 9;
  opts.random_points = 500;
  const VerificationReport a = run_suite(small_sets(), opts);
  const VerificationReport b = run_suite(small_sets(), opts);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("loosening the radial tolerance breaks the endpoint check") {
  SuiteOptions opts;
  opts.seed = 5;
  opts.random_points = 200;
  opts.params.root_tol = 1e-2;
  const VerificationReport report = run_suite(small_sets(), opts);
  const CheckResult* endpoint = find_check(report, "deformation_lands_on_htrop");
  REQUIRE(endpoint != nullptr);
  CHECK_FALSE(endpoint->pass);
  CHECK_FALSE(report.overall);
}

TEST_CASE("a corrupted order-3 map is caught by its check") {
  SuiteOptions opts;
  opts.seed = 5;
  opts.random_points = 200;
  opts.lambda_corruption = 1e-3;
  const VerificationReport report = run_suite(small_sets(), opts);
  const CheckResult* order = find_check(report, "lambda_order_three");
  REQUIRE(order != nullptr);
  CHECK_FALSE(order->pass);
  CHECK_FALSE(report.overall);
}

TEST_CASE("vacuous checks fail instead of passing") {
  SampleSet empty;
  empty.strategy = Strategy::CoamoebaGrid;
  SuiteOptions opts;
  opts.random_points = 100;
  const VerificationReport report = run_suite({empty}, opts);
  const CheckResult* on_line = find_check(report, "sample_on_line");
  REQUIRE(on_line != nullptr);
  CHECK(on_line->sample_count == 0);
  CHECK_FALSE(on_line->pass);
  CHECK_FALSE(report.overall);
}

TEST_CASE("continuity proxy is one at t = 0 and needs adjacency") {
  const SampleSet grid = sample_line(Strategy::CoamoebaGrid, 10, 0);
  REQUIRE(!grid.adjacency.empty());
  CHECK(std::fabs(continuity_proxy(grid, 0.0) - 1.0) < 1e-9);
  CHECK(continuity_proxy(grid, 1.0) < 1e3);

  SampleSet no_adjacency = grid;
  no_adjacency.adjacency.clear();
  CHECK_THROWS_AS(continuity_proxy(no_adjacency, 0.5), std::domain_error);
}

TEST_CASE("report json has the expected shape") {
  SuiteOptions opts;
  opts.random_points = 100;
  const VerificationReport report = run_suite(small_sets(), opts);
  const nlohmann::json j = report_to_json(report);
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("overall"));
  REQUIRE(j["checks"].is_array());
  bool overall = true;
  for (const auto& c : j["checks"]) {
    REQUIRE(c.contains("name"));
    REQUIRE(c.contains("max_residual"));
    REQUIRE(c.contains("tolerance"));
    REQUIRE(c.contains("pass"));
    REQUIRE(c.contains("sample_count"));
    overall = overall && c["pass"].get<bool>();
  }
  CHECK(j["overall"].get<bool>() == overall);
}
