// geolab: sample random regular graphs, measure geodesic structure and
// compare against the limiting laws.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "geolab/cycles.hpp"
#include "geolab/error.hpp"
#include "geolab/graph.hpp"
#include "geolab/harness.hpp"
#include "geolab/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

struct CheckFailed {};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw geolab::Error(geolab::ErrorCode::kIo, "cannot write " + path);
  out << text;
}

std::string format(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, x);
  return buf;
}

struct TableRow {
  std::uint32_t d;
  double prob;
  double osc;
};

// Published prob/osc reference values.
constexpr TableRow kReference[] = {
    {3, 0.7213, 8.6e-6}, {4, 0.6073, 1.4e-3}, {5, 0.5444, 7.9e-3}, {10, 0.4411, 7.6e-2}, {100, 0.3743, 0.3},
};

double fraction_within(const geolab::Histogram& hist, double centre, double window) {
  std::uint64_t total = 0;
  std::uint64_t inside = 0;
  for (auto [t, c] : hist) {
    total += c;
    if (std::abs(static_cast<double>(t) - centre) <= window) inside += c;
  }
  return total == 0 ? 0.0 : static_cast<double>(inside) / static_cast<double>(total);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geolab: geodesics in random regular graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample a random d-regular graph");
  std::uint32_t gen_n = 0, gen_d = 3;
  std::uint64_t gen_seed = 1, gen_stream = 0, gen_attempts = geolab::kDefaultMaxAttempts;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--d", gen_d, "degree")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--stream", gen_stream, "random sub-stream");
  gen->add_option("--max-attempts", gen_attempts, "pairings to try before giving up");
  gen->add_option("--out", gen_out, "output graph file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "distance and geodesic-count statistics of a graph file");
  std::string stats_graph, stats_out;
  std::uint64_t stats_pairs = 1000, stats_seed = 1;
  bool stats_json = false, stats_csv = false;
  stats->add_option("--graph", stats_graph, "graph file")->required();
  stats->add_option("--pairs", stats_pairs, "sampled vertex pairs");
  stats->add_option("--seed", stats_seed, "random seed");
  auto* sj = stats->add_flag("--json", stats_json, "JSON report (default)");
  stats->add_flag("--csv", stats_csv, "CSV report")->excludes(sj);
  stats->add_option("--out", stats_out, "output file (default stdout)");

  // pmf
  auto* pmf = app.add_subcommand("pmf", "limiting geodesic-count (and distance) distribution");
  std::uint32_t pmf_d = 3, pmf_lmax = 20;
  double pmf_gamma = 0.0;
  std::uint64_t pmf_n = 0;
  std::string pmf_out;
  pmf->add_option("--d", pmf_d, "degree")->required();
  auto* pg = pmf->add_option("--gamma", pmf_gamma, "phase in [0,1)");
  pmf->add_option("--n", pmf_n, "vertex count (derives gamma, adds the distance pmf)")->excludes(pg);
  pmf->add_option("--lmax", pmf_lmax, "largest geodesic count listed");
  pmf->add_option("--out", pmf_out, "output file (default stdout)");

  // table
  auto* table = app.add_subcommand("table", "unique-geodesic probability and oscillation table");
  std::string table_out;
  std::uint32_t table_resolution = geolab::theory::kDefaultGammaGrid;
  bool table_check = false;
  table->add_option("--out", table_out, "output file (default stdout)");
  table->add_option("--resolution", table_resolution, "gamma grid points");
  table->add_flag("--check", table_check, "compare against the published values (exit 3 on mismatch)");

  // mc
  auto* mc = app.add_subcommand("mc", "full Monte Carlo experiment");
  geolab::ExperimentConfig mc_cfg;
  bool mc_csv = false, mc_check = false;
  mc_cfg.cycle_pairs = 100;
  mc->add_option("--n", mc_cfg.n, "vertex count")->required();
  mc->add_option("--d", mc_cfg.d, "degree")->required();
  mc->add_option("--graphs", mc_cfg.num_graphs, "number of graphs");
  mc->add_option("--pairs", mc_cfg.pairs_per_graph, "pairs per graph");
  mc->add_option("--seed", mc_cfg.seed, "random seed");
  mc->add_option("--omega-extra", mc_cfg.omega_extra, "additive term in the cycle slack budget");
  mc->add_option("--paths", mc_cfg.paths_requested, "disjoint paths per pair (default d)");
  mc->add_option("--cycle-pairs", mc_cfg.cycle_pairs, "pairs per graph given the cycle analysis");
  mc->add_option("--quadruples", mc_cfg.quadruple_samples, "four-point samples on the first graph");
  mc->add_option("--workers", mc_cfg.workers, "worker threads (0 = all cores)");
  mc->add_option("--out", mc_cfg.output_path, "output file (default stdout)");
  mc->add_flag("--csv", mc_csv, "CSV report (default JSON)");
  mc->add_flag("--check", mc_check, "gate against theory (exit 3 on failure)");

  // cycles
  auto* cyc = app.add_subcommand("cycles", "disjoint near-geodesic paths and their cycles");
  std::string cyc_graph, cyc_out;
  std::uint64_t cyc_pairs = 10, cyc_seed = 1;
  std::uint32_t cyc_paths = 0, cyc_omega = geolab::EpsilonBudget::kDefaultOmegaExtra;
  cyc->add_option("--graph", cyc_graph, "graph file")->required();
  cyc->add_option("--pairs", cyc_pairs, "sampled vertex pairs");
  cyc->add_option("--paths", cyc_paths, "paths per pair (default d)");
  cyc->add_option("--seed", cyc_seed, "random seed");
  cyc->add_option("--omega-extra", cyc_omega, "additive term in the slack budget");
  cyc->add_option("--out", cyc_out, "output file (default stdout)");

  // hyp
  auto* hyp = app.add_subcommand("hyp", "sampled four-point hyperbolicity");
  std::string hyp_graph;
  std::uint64_t hyp_samples = 10000, hyp_seed = 1;
  hyp->add_option("--graph", hyp_graph, "graph file")->required();
  hyp->add_option("--samples", hyp_samples, "sampled quadruples");
  hyp->add_option("--seed", hyp_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gen) {
      auto s = geolab::sample_regular_graph(gen_n, gen_d, {gen_seed, gen_stream}, gen_attempts);
      emit(gen_out, geolab::serialize_graph(s.graph));
      std::cerr << "sampled after " << s.attempts << " pairing(s)\n";
    } else if (*stats) {
      const auto g = geolab::load_graph(stats_graph);
      geolab::ExperimentConfig cfg;
      cfg.pairs_per_graph = stats_pairs;
      cfg.seed = stats_seed;
      const auto report = geolab::analyze_graph(g, cfg);
      emit(stats_out, geolab::report_to_string(report, stats_csv ? geolab::ReportFormat::kCsv
                                                                 : geolab::ReportFormat::kJson));
    } else if (*pmf) {
      geolab::theory::TheoryParams params;
      params.d = pmf_d;
      std::int64_t i0 = 0;
      if (pmf_n > 0) {
        const auto h = geolab::theory::half_radius_and_gamma(pmf_n, pmf_d);
        params.gamma = h.gamma;
        i0 = h.i0;
      } else {
        params.gamma = pmf_gamma;
      }
      params.validate();
      if (pmf_lmax < 1 || pmf_lmax > params.l_max) {
        throw geolab::Error(geolab::ErrorCode::kInvalidArguments, "--lmax must lie in [1, 300]");
      }
      std::ostringstream out;
      out << "kind,key,prob\n";
      for (std::uint32_t l = 1; l <= pmf_lmax; ++l) {
        out << "geodesics," << l << ',' << format("%.12g", geolab::theory::geodesic_count_pmf(params, l)) << '\n';
      }
      if (pmf_n > 0) {
        for (std::int64_t t = 1; t <= 2 * i0 + 24; ++t) {
          out << "distance," << t << ',' << format("%.12g", geolab::theory::distance_pmf(params, i0, t)) << '\n';
        }
      }
      emit(pmf_out, out.str());
    } else if (*table) {
      std::ostringstream out;
      out << "d,prob,osc\n";
      bool ok = true;
      for (const auto& ref : kReference) {
        const auto o = geolab::theory::oscillation(ref.d, table_resolution);
        out << ref.d << ',' << format("%.4f", o.prob_at_zero) << ',' << format("%.1e", o.max_abs_deviation) << '\n';
        ok = ok && std::abs(o.prob_at_zero - ref.prob) <= 1e-3 &&
             std::abs(o.max_abs_deviation - ref.osc) <= 0.1 * ref.osc;
      }
      emit(table_out, out.str());
      if (table_check && !ok) throw CheckFailed{};
    } else if (*mc) {
      const auto report = geolab::run_experiment(mc_cfg);
      emit(mc_cfg.output_path,
           geolab::report_to_string(report, mc_csv ? geolab::ReportFormat::kCsv : geolab::ReportFormat::kJson));
      if (mc_check) {
        const double log_n = std::log(mc_cfg.n) / std::log(mc_cfg.d - 1.0);
        const double within = fraction_within(report.distance_hist, log_n, 4.0);
        const bool ok = std::abs(report.unique_fraction - report.theory_unique) <= 0.02 &&
                        report.distance_tv < 0.08 && within >= 0.95;
        std::cerr << "unique " << report.unique_fraction << " vs " << report.theory_unique << ", TV "
                  << report.distance_tv << ", concentration " << within << '\n';
        if (!ok) throw CheckFailed{};
      }
    } else if (*cyc) {
      const auto g = geolab::load_graph(cyc_graph);
      const std::uint32_t d = g.regular_degree().value_or(0);
      const auto budget = geolab::EpsilonBudget::for_graph(g.num_vertices(), d, cyc_omega);
      const auto records = geolab::cycle_records(g, cyc_pairs, cyc_paths == 0 ? d : cyc_paths, budget.e,
                                                 {cyc_seed, 0});
      emit(cyc_out, geolab::cycle_records_to_json(records, budget.e));
    } else if (*hyp) {
      const auto g = geolab::load_graph(hyp_graph);
      const auto est = geolab::hyperbolicity_estimate(g, hyp_samples, {hyp_seed, 0});
      std::cout << "delta " << est.delta << "\nsamples " << est.samples << "\nhalf_diameter_bound "
                << est.half_diameter_bound() << "\nwitness " << est.witness[0] << ' ' << est.witness[1] << ' '
                << est.witness[2] << ' ' << est.witness[3] << '\n';
    }
  } catch (const CheckFailed&) {
    std::cerr << "check failed\n";
    return kExitCheckFailed;
  } catch (const geolab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == geolab::ErrorCode::kInvalidArguments ? kExitInvalid : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
