#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "fixtures.hpp"
#include "geolab/error.hpp"
#include "geolab/harness.hpp"

using namespace geolab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 2000;
  c.d = 3;
  c.num_graphs = 2;
  c.pairs_per_graph = 400;
  c.seed = 17;
  c.cycle_pairs = 10;
  c.quadruple_samples = 200;
  return c;
}

std::uint64_t total(const Histogram& h) {
  std::uint64_t t = 0;
  for (auto [k, c] : h) t += c;
  return t;
}

}  // namespace

TEST_CASE("K4 experiment") {
  ExperimentConfig c;
  c.n = 4;
  c.d = 3;
  c.pairs_per_graph = 6;
  const auto r = run_experiment(c);
  CHECK(r.distance_hist == Histogram{{1, 6}});
  CHECK(r.geodesic_hist == Histogram{{1, 6}});
  CHECK(r.unique_fraction == 1.0);
}

TEST_CASE("reports are deterministic and independent of worker count") {
  auto c = small_config();
  c.workers = 1;
  const auto a = run_experiment(c);
  c.workers = 3;
  const auto b = run_experiment(c);
  CHECK(a == b);
  CHECK(report_to_string(a, ReportFormat::kJson) == report_to_string(b, ReportFormat::kJson));
  CHECK(report_to_string(a, ReportFormat::kCsv) == report_to_string(b, ReportFormat::kCsv));
  c.seed = 18;
  CHECK_FALSE(run_experiment(c) == a);
}

TEST_CASE("histogram conservation") {
  const auto r = run_experiment(small_config());
  const auto included = r.pairs_attempted - r.excluded_disconnected - r.excluded_overflow;
  CHECK(r.pairs_attempted == 800);
  CHECK(total(r.distance_hist) == included);
  CHECK(total(r.geodesic_hist) == included);
  CHECK(total(r.path_count_hist) == r.cycle_pairs_analyzed);
  CHECK(r.cycle_pairs_analyzed == 20);
  CHECK(total(r.slack_hist) == total(r.diametric_slack_hist));
  CHECK(total(r.midpoint_hist) == total(r.slack_hist));
  CHECK(r.hyperbolicity_samples == 200);
  CHECK(r.hyperbolicity_delta <= r.sampled_diameter / 2.0);
  CHECK(r.budget_e == EpsilonBudget::for_graph(2000, 3).e);
}

TEST_CASE("disconnected pairs are counted, not dropped") {
  ExperimentConfig c;
  c.pairs_per_graph = 300;
  c.seed = 3;
  const auto r = analyze_graph(fixtures::two_triangles(), c);
  CHECK(r.excluded_disconnected > 0);
  CHECK(total(r.distance_hist) + r.excluded_disconnected == 300);
  CHECK(r.theory_distance.empty());  // d = 2 has no limiting law
}

TEST_CASE("compare_to_theory rows") {
  ExperimentReport r;
  r.distance_hist = {{2, 30}, {3, 70}};
  r.theory_distance = {{2, 0.3}, {3, 0.7}, {4, 0.0}};
  r.geodesic_hist = {};
  r.theory_geodesics = {{1, 0.5}};
  const auto rows = compare_to_theory(r);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].statistic == "distance");
  CHECK(rows[0].z.has_value());
  CHECK(*rows[0].z == doctest::Approx(0.0));
  CHECK(*rows[1].z == doctest::Approx(0.0));
  CHECK(rows[2].key == 4);
  CHECK(*rows[2].z == 0.0);  // zero probability, zero observed
  CHECK(rows[3].statistic == "geodesics");
  CHECK_FALSE(rows[3].z.has_value());  // no samples

  CHECK(total_variation(r.distance_hist, r.theory_distance) == doctest::Approx(0.0));
  CHECK(total_variation({{1, 10}}, {{2, 1.0}}) == doctest::Approx(1.0));
}

TEST_CASE("report persistence round-trips") {
  const auto r = run_experiment(small_config());
  const auto dir = std::filesystem::temp_directory_path();
  for (auto fmt : {ReportFormat::kJson, ReportFormat::kCsv}) {
    const auto path = (dir / (fmt == ReportFormat::kJson ? "geolab_rt.json" : "geolab_rt.csv")).string();
    save_report(path, r, fmt);
    CHECK(load_report(path, fmt) == r);
    std::remove(path.c_str());
  }
  const std::string csv = report_to_string(r, ReportFormat::kCsv);
  CHECK(csv.rfind("#geodesic-lab v1\n", 0) == 0);
  CHECK(csv.find(",;") == std::string::npos);
}

TEST_CASE("persistence errors") {
  const auto r = run_experiment(small_config());
  for (auto fmt : {ReportFormat::kJson, ReportFormat::kCsv}) {
    const std::string text = report_to_string(r, fmt);
    try {
      report_from_string(text.substr(0, text.size() / 2), fmt);
      FAIL("expected schema error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSchema);
    }
  }
  std::string csv = report_to_string(r, ReportFormat::kCsv);
  csv.replace(0, 16, "#geodesic-lab v2");
  try {
    report_from_string(csv, ReportFormat::kCsv);
    FAIL("expected version error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("v2") != std::string::npos);
  }
  std::string json = report_to_string(r, ReportFormat::kJson);
  const auto pos = json.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  json.replace(pos, 12, "\"version\": 9");
  try {
    report_from_string(json, ReportFormat::kJson);
    FAIL("expected version error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("version 9") != std::string::npos);
  }
  CHECK_THROWS_AS(load_report("/nonexistent/report.json", ReportFormat::kJson), Error);
}

TEST_CASE("invalid configs") {
  ExperimentConfig c;
  c.n = 5;
  c.d = 3;
  CHECK_THROWS_AS(run_experiment(c), Error);
  c.n = 6;
  c.pairs_per_graph = 0;
  CHECK_THROWS_AS(run_experiment(c), Error);
}

TEST_CASE("cycle records") {
  const auto g = sample_regular_graph(1000, 3, {8, 0}).graph;
  const auto recs = cycle_records(g, 5, 3, 6, {8, 1});
  REQUIRE(recs.size() == 5);
  for (const auto& rec : recs) {
    CHECK(rec.cycles.size() == rec.paths.size() * (rec.paths.size() - 1) / 2);
    CHECK(rec.slacks.size() == rec.cycles.size());
  }
  const auto json = cycle_records_to_json(recs, 6);
  CHECK(json.find("\"max_slack\"") != std::string::npos);
  CHECK(json.find("\"diametric_slack\"") != std::string::npos);
}
