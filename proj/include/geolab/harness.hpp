#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geolab/cycles.hpp"
#include "geolab/graph.hpp"

namespace geolab {

using Histogram = std::map<std::int64_t, std::uint64_t>;

enum class ReportFormat { kCsv, kJson };

struct ExperimentConfig {
  std::uint32_t n = 0;
  std::uint32_t d = 3;
  std::uint32_t num_graphs = 1;
  std::uint64_t pairs_per_graph = 1000;
  std::uint64_t seed = 1;
  std::uint32_t omega_extra = EpsilonBudget::kDefaultOmegaExtra;
  std::uint32_t paths_requested = 0;  // 0 means d
  std::uint64_t quadruple_samples = 0;
  std::uint64_t cycle_pairs = 0;  // leading pairs per graph that get the cycle analysis
  std::uint64_t max_attempts = kDefaultMaxAttempts;

  // Not part of the report; results do not depend on them.
  unsigned workers = 0;  // 0 means hardware concurrency
  std::string output_path;
  ReportFormat format = ReportFormat::kJson;

  std::uint32_t effective_paths() const noexcept { return paths_requested == 0 ? d : paths_requested; }
  /// Throws kInvalidArguments.
  void validate() const;
};

struct ComparisonRow {
  std::string statistic;  // "distance" or "geodesics"
  std::int64_t key = 0;   // t or l
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double stderr_ = 0.0;  // binomial, from the theoretical probability
  std::optional<double> z;

  bool operator==(const ComparisonRow&) const = default;
};

struct ExperimentReport {
  // config echo
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t num_graphs = 0;
  std::uint64_t pairs_per_graph = 0;
  std::uint64_t seed = 0;
  std::uint32_t omega_extra = 0;
  std::uint32_t paths_requested = 0;
  std::uint64_t quadruple_samples = 0;
  std::uint64_t cycle_pairs = 0;

  std::int64_t i0 = 0;
  double gamma = 0.0;
  std::uint64_t pairing_attempts = 0;

  // pair statistics
  std::uint64_t pairs_attempted = 0;
  std::uint64_t excluded_disconnected = 0;
  std::uint64_t excluded_overflow = 0;
  Histogram distance_hist;
  Histogram geodesic_hist;
  double unique_fraction = 0.0;
  double unique_stderr = 0.0;

  // cycle statistics
  std::uint32_t budget_e = 0;
  std::uint64_t cycle_pairs_analyzed = 0;
  std::uint64_t cycle_successes = 0;  // all paths found and every cycle within budget
  Histogram path_count_hist;
  Histogram slack_hist;
  Histogram diametric_slack_hist;
  Histogram midpoint_hist;

  // hyperbolicity (first graph)
  double hyperbolicity_delta = 0.0;
  std::uint64_t hyperbolicity_samples = 0;
  std::uint32_t sampled_diameter = 0;

  // theory at gamma(n, d)
  std::map<std::int64_t, double> theory_distance;
  std::map<std::int64_t, double> theory_geodesics;
  double theory_unique = 0.0;
  double unique_z = 0.0;
  double distance_tv = 0.0;
  std::vector<ComparisonRow> comparison;

  bool operator==(const ExperimentReport&) const = default;
};

/// Statistics for one graph. graph_index selects the random sub-streams, so
/// a report is a pure function of (graph, config, graph_index).
ExperimentReport analyze_graph(const Graph& g, const ExperimentConfig& config,
                               std::uint32_t graph_index = 0);

/// Samples config.num_graphs graphs and merges their statistics in index order.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Per-t and per-l rows; z is empty when the standard error vanishes.
std::vector<ComparisonRow> compare_to_theory(const ExperimentReport& report);

/// 0.5 * sum_t |empirical(t) - theoretical(t)|.
double total_variation(const Histogram& hist, const std::map<std::int64_t, double>& theory);

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCsvMagic = "#geodesic-lab v1";

std::string report_to_string(const ExperimentReport& r, ReportFormat format);
/// Throws kSchema on malformed, truncated or wrong-version input.
ExperimentReport report_from_string(const std::string& text, ReportFormat format);
void save_report(const std::string& path, const ExperimentReport& r, ReportFormat format);
ExperimentReport load_report(const std::string& path, ReportFormat format);

struct CycleRecord {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t distance = 0;
  std::vector<GeodesicPath> paths;
  std::vector<Cycle> cycles;
  std::vector<SlackReport> slacks;
  std::vector<std::uint32_t> midpoint_separations;
};

/// Disjoint-path and cycle analysis for `pairs` random pairs of g.
std::vector<CycleRecord> cycle_records(const Graph& g, std::uint64_t pairs, std::uint32_t paths,
                                       std::uint32_t slack_cap, RngSeed seed);
std::string cycle_records_to_json(const std::vector<CycleRecord>& records, std::uint32_t budget_e);

}  // namespace geolab
