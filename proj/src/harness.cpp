#include "geolab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "geolab/error.hpp"
#include "geolab/geodesy.hpp"
#include "geolab/theory.hpp"
#include "json.hpp"

namespace geolab {

namespace {

// Sub-stream families under a report seed.
constexpr std::uint64_t kGraphStreams = 0;
constexpr std::uint64_t kPairStreams = 1;
constexpr std::uint64_t kQuadStreams = 2;

std::pair<Vertex, Vertex> sample_pair(std::uint32_t n, RngSeed seed) {
  CounterRng rng(seed);
  const auto u = static_cast<Vertex>(rng.below(n));
  auto v = static_cast<Vertex>(rng.below(n));
  while (v == u) v = static_cast<Vertex>(rng.below(n));
  return {u, v};
}

RngSeed pair_seed(std::uint64_t seed, std::uint32_t graph_index, std::uint64_t pair_index) {
  return {seed, substream(substream(kPairStreams, graph_index), pair_index)};
}

unsigned worker_count(unsigned requested, std::uint64_t tasks) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(tasks, 1)));
}

// Runs body(begin, end) over contiguous chunks of [0, tasks).
void parallel_chunks(std::uint64_t tasks, unsigned workers,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  workers = worker_count(workers, tasks);
  if (workers <= 1) {
    body(0, tasks);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = tasks * w / workers;
    const std::uint64_t end = tasks * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct CycleOutcome {
  std::size_t achieved = 0;
  bool success = false;
  std::vector<std::uint32_t> slacks;
  std::vector<std::uint32_t> diametric;
  std::vector<std::uint32_t> midpoints;
};

CycleOutcome analyze_cycles(const Graph& g, Vertex u, Vertex v, std::uint32_t paths,
                            std::uint32_t budget, RngSeed seed) {
  CycleOutcome out;
  const DisjointPaths found = find_almost_geodesic_paths(g, u, v, paths, budget, seed).found;
  out.achieved = found.paths.size();
  out.success = !found.shortfall;
  for (std::size_t a = 0; a < found.paths.size(); ++a) {
    for (std::size_t b = a + 1; b < found.paths.size(); ++b) {
      const Cycle c = cycle_from_paths(found.paths[a], found.paths[b]);
      const SlackReport s = slack_report(g, c);
      out.slacks.push_back(s.max_slack);
      out.diametric.push_back(s.diametric_slack);
      out.midpoints.push_back(midpoint_separation(g, found.paths[a], found.paths[b]));
      if (s.max_slack > budget) out.success = false;
    }
  }
  return out;
}

void add_into(Histogram& into, const Histogram& from) {
  for (auto [k, c] : from) into[k] += c;
}

void finalize(ExperimentReport& r) {
  const std::uint64_t included = r.pairs_attempted - r.excluded_disconnected - r.excluded_overflow;
  if (included > 0) {
    const auto it = r.geodesic_hist.find(1);
    const double unique = it == r.geodesic_hist.end() ? 0.0 : static_cast<double>(it->second);
    r.unique_fraction = unique / static_cast<double>(included);
    r.unique_stderr = std::sqrt(r.unique_fraction * (1.0 - r.unique_fraction) / static_cast<double>(included));
  }
  if (r.d < 3 || r.n < 2) return;

  const theory::HalfRadius h = theory::half_radius_and_gamma(r.n, r.d);
  r.i0 = h.i0;
  r.gamma = h.gamma;
  theory::TheoryParams params;
  params.d = r.d;
  params.gamma = h.gamma;
  r.theory_distance.clear();
  for (std::int64_t t = 1; t <= 2 * h.i0 + 24; ++t) {
    const double p = theory::distance_pmf(params, h.i0, t);
    if (p > 0.0) r.theory_distance[t] = p;
  }
  std::int64_t l_hi = 20;
  if (!r.geodesic_hist.empty()) l_hi = std::max(l_hi, r.geodesic_hist.rbegin()->first);
  l_hi = std::min<std::int64_t>(l_hi, params.l_max);
  r.theory_geodesics.clear();
  for (std::int64_t l = 1; l <= l_hi; ++l) {
    r.theory_geodesics[l] = theory::geodesic_count_pmf(params, static_cast<std::uint32_t>(l));
  }
  r.theory_unique = theory::unique_geodesic_prob(r.d, h.gamma);
  const double se = std::sqrt(r.theory_unique * (1.0 - r.theory_unique) / std::max<double>(1.0, included));
  r.unique_z = se > 0.0 ? (r.unique_fraction - r.theory_unique) / se : 0.0;
  r.distance_tv = total_variation(r.distance_hist, r.theory_distance);
  r.comparison = compare_to_theory(r);
}

ExperimentReport echo(const ExperimentConfig& c) {
  ExperimentReport r;
  r.n = c.n;
  r.d = c.d;
  r.num_graphs = c.num_graphs;
  r.pairs_per_graph = c.pairs_per_graph;
  r.seed = c.seed;
  r.omega_extra = c.omega_extra;
  r.paths_requested = c.effective_paths();
  r.quadruple_samples = c.quadruple_samples;
  r.cycle_pairs = std::min(c.cycle_pairs, c.pairs_per_graph);
  return r;
}

// Raw (unfinalized) statistics for one graph.
ExperimentReport collect(const Graph& g, const ExperimentConfig& config, std::uint32_t graph_index) {
  ExperimentReport r = echo(config);
  const std::uint32_t n = g.num_vertices();
  const std::uint64_t pairs = config.pairs_per_graph;

  struct PairResult {
    PairGeodesics geo;
    bool overflow = false;
  };
  std::vector<PairResult> results(pairs);
  parallel_chunks(pairs, config.workers, [&](std::uint64_t begin, std::uint64_t end) {
    PairSearcher search(g);
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto [u, v] = sample_pair(n, pair_seed(config.seed, graph_index, i));
      try {
        results[i].geo = search.query(u, v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCountOverflow) throw;
        results[i].overflow = true;
      }
    }
  });
  r.pairs_attempted = pairs;
  for (const PairResult& p : results) {
    if (p.overflow) {
      ++r.excluded_overflow;
    } else if (!p.geo.distance) {
      ++r.excluded_disconnected;
    } else {
      ++r.distance_hist[*p.geo.distance];
      ++r.geodesic_hist[static_cast<std::int64_t>(p.geo.count)];
    }
  }

  if (config.d >= 3) {
    r.budget_e = EpsilonBudget::for_graph(n, config.d, config.omega_extra).e;
  }
  if (r.cycle_pairs > 0 && config.d >= 3) {
    std::vector<std::optional<CycleOutcome>> outcomes(r.cycle_pairs);
    parallel_chunks(r.cycle_pairs, config.workers, [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t i = begin; i < end; ++i) {
        if (!results[i].geo.distance) continue;
        const RngSeed ps = pair_seed(config.seed, graph_index, i);
        const auto [u, v] = sample_pair(n, ps);
        outcomes[i] = analyze_cycles(g, u, v, config.effective_paths(), r.budget_e,
                                     {ps.seed, substream(ps.stream, 1)});
      }
    });
    for (const auto& o : outcomes) {
      if (!o) continue;
      ++r.cycle_pairs_analyzed;
      ++r.path_count_hist[static_cast<std::int64_t>(o->achieved)];
      if (o->success) ++r.cycle_successes;
      for (auto s : o->slacks) ++r.slack_hist[s];
      for (auto s : o->diametric) ++r.diametric_slack_hist[s];
      for (auto s : o->midpoints) ++r.midpoint_hist[s];
    }
  }

  if (graph_index == 0 && config.quadruple_samples > 0) {
    const HyperbolicityEstimate h =
        hyperbolicity_estimate(g, config.quadruple_samples, {config.seed, substream(kQuadStreams, 0)});
    r.hyperbolicity_delta = h.delta;
    r.hyperbolicity_samples = h.samples;
    r.sampled_diameter = h.sampled_diameter;
  }
  return r;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArguments, what); };
  if (n < 2) fail("n must be at least 2");
  if (d < 1) fail("d must be at least 1");
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) fail("n*d must be even");
  if (num_graphs < 1) fail("num_graphs must be at least 1");
  if (pairs_per_graph < 1) fail("pairs_per_graph must be at least 1");
  if (max_attempts < 1) fail("max_attempts must be at least 1");
}

ExperimentReport analyze_graph(const Graph& g, const ExperimentConfig& config, std::uint32_t graph_index) {
  ExperimentConfig c = config;
  c.n = g.num_vertices();
  c.d = g.regular_degree().value_or(0);
  ExperimentReport r = collect(g, c, graph_index);
  finalize(r);
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport total = echo(config);
  for (std::uint32_t gi = 0; gi < config.num_graphs; ++gi) {
    SampledGraph s = sample_regular_graph(config.n, config.d, {config.seed, substream(kGraphStreams, gi)},
                                          config.max_attempts);
    ExperimentReport part = collect(s.graph, config, gi);
    total.pairing_attempts += s.attempts;
    total.pairs_attempted += part.pairs_attempted;
    total.excluded_disconnected += part.excluded_disconnected;
    total.excluded_overflow += part.excluded_overflow;
    add_into(total.distance_hist, part.distance_hist);
    add_into(total.geodesic_hist, part.geodesic_hist);
    total.budget_e = part.budget_e;
    total.cycle_pairs_analyzed += part.cycle_pairs_analyzed;
    total.cycle_successes += part.cycle_successes;
    add_into(total.path_count_hist, part.path_count_hist);
    add_into(total.slack_hist, part.slack_hist);
    add_into(total.diametric_slack_hist, part.diametric_slack_hist);
    add_into(total.midpoint_hist, part.midpoint_hist);
    if (gi == 0) {
      total.hyperbolicity_delta = part.hyperbolicity_delta;
      total.hyperbolicity_samples = part.hyperbolicity_samples;
      total.sampled_diameter = part.sampled_diameter;
    }
  }
  finalize(total);
  return total;
}

double total_variation(const Histogram& hist, const std::map<std::int64_t, double>& theory) {
  std::uint64_t total = 0;
  for (auto [k, c] : hist) total += c;
  if (total == 0) return 0.0;
  std::map<std::int64_t, double> diff = theory;
  for (auto& [k, p] : diff) p = -p;
  for (auto [k, c] : hist) diff[k] += static_cast<double>(c) / static_cast<double>(total);
  double tv = 0.0;
  for (auto [k, x] : diff) tv += std::abs(x);
  return tv / 2.0;
}

std::vector<ComparisonRow> compare_to_theory(const ExperimentReport& report) {
  std::vector<ComparisonRow> rows;
  auto build = [&](const std::string& name, const Histogram& hist, const std::map<std::int64_t, double>& th) {
    std::uint64_t total = 0;
    for (auto [k, c] : hist) total += c;
    std::map<std::int64_t, bool> keys;
    for (auto [k, c] : hist) keys[k] = true;
    for (auto [k, p] : th) keys[k] = true;
    for (auto [k, unused] : keys) {
      ComparisonRow row;
      row.statistic = name;
      row.key = k;
      const auto h = hist.find(k);
      row.count = h == hist.end() ? 0 : h->second;
      row.total = total;
      const auto t = th.find(k);
      row.theoretical = t == th.end() ? 0.0 : t->second;
      if (total > 0) {
        row.empirical = static_cast<double>(row.count) / static_cast<double>(total);
        row.stderr_ = std::sqrt(row.theoretical * (1.0 - row.theoretical) / static_cast<double>(total));
        if (row.stderr_ > 0.0) {
          row.z = (row.empirical - row.theoretical) / row.stderr_;
        } else if (row.empirical == row.theoretical) {
          row.z = 0.0;
        }
      }
      rows.push_back(std::move(row));
    }
  };
  build("distance", report.distance_hist, report.theory_distance);
  build("geodesics", report.geodesic_hist, report.theory_geodesics);
  return rows;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

// Applies a visitor to every scalar, histogram and theory map of a report.
template <typename R, typename V>
void visit_fields(R& r, V&& v) {
  v.scalar("n", r.n);
  v.scalar("d", r.d);
  v.scalar("num_graphs", r.num_graphs);
  v.scalar("pairs_per_graph", r.pairs_per_graph);
  v.scalar("seed", r.seed);
  v.scalar("omega_extra", r.omega_extra);
  v.scalar("paths_requested", r.paths_requested);
  v.scalar("quadruple_samples", r.quadruple_samples);
  v.scalar("cycle_pairs", r.cycle_pairs);
  v.scalar("i0", r.i0);
  v.scalar("gamma", r.gamma);
  v.scalar("pairing_attempts", r.pairing_attempts);
  v.scalar("pairs_attempted", r.pairs_attempted);
  v.scalar("excluded_disconnected", r.excluded_disconnected);
  v.scalar("excluded_overflow", r.excluded_overflow);
  v.scalar("unique_fraction", r.unique_fraction);
  v.scalar("unique_stderr", r.unique_stderr);
  v.scalar("budget_e", r.budget_e);
  v.scalar("cycle_pairs_analyzed", r.cycle_pairs_analyzed);
  v.scalar("cycle_successes", r.cycle_successes);
  v.scalar("hyperbolicity_delta", r.hyperbolicity_delta);
  v.scalar("hyperbolicity_samples", r.hyperbolicity_samples);
  v.scalar("sampled_diameter", r.sampled_diameter);
  v.scalar("theory_unique", r.theory_unique);
  v.scalar("unique_z", r.unique_z);
  v.scalar("distance_tv", r.distance_tv);
  v.map("distance_hist", r.distance_hist);
  v.map("geodesic_hist", r.geodesic_hist);
  v.map("path_count_hist", r.path_count_hist);
  v.map("slack_hist", r.slack_hist);
  v.map("diametric_slack_hist", r.diametric_slack_hist);
  v.map("midpoint_hist", r.midpoint_hist);
  v.map("theory_distance", r.theory_distance);
  v.map("theory_geodesics", r.theory_geodesics);
}

template <typename T>
std::string format_number(T value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(const std::string& s, const std::string& field) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kSchema, "bad value '" + s + "' for " + field);
  }
  return value;
}

using nlohmann::json;

struct JsonWriter {
  json& out;
  template <typename T>
  void scalar(const char* name, const T& value) {
    out[name] = value;
  }
  template <typename K, typename T>
  void map(const char* name, const std::map<K, T>& m) {
    json arr = json::array();
    for (const auto& [k, x] : m) arr.push_back(json::array({k, x}));
    out[name] = std::move(arr);
  }
};

struct JsonReader {
  const json& in;
  template <typename T>
  void scalar(const char* name, T& value) {
    value = in.at(name).get<T>();
  }
  template <typename K, typename T>
  void map(const char* name, std::map<K, T>& m) {
    m.clear();
    for (const auto& item : in.at(name)) m[item.at(0).get<K>()] = item.at(1).get<T>();
  }
};

struct CsvWriter {
  std::ostringstream& out;
  std::uint64_t rows = 0;
  template <typename T>
  void scalar(const char* name, const T& value) {
    out << "scalar," << name << ',' << format_number(value) << '\n';
    ++rows;
  }
  template <typename K, typename T>
  void map(const char* name, const std::map<K, T>& m) {
    for (const auto& [k, x] : m) {
      out << name << ',' << k << ',' << format_number(x) << '\n';
      ++rows;
    }
  }
};

using CsvRows = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

struct CsvReader {
  const CsvRows& rows;
  const std::string* lookup(const std::string& section, const std::string& key) const {
    const auto it = rows.find(section);
    if (it == rows.end()) return nullptr;
    for (const auto& [k, v] : it->second) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  template <typename T>
  void scalar(const char* name, T& value) {
    const std::string* s = lookup("scalar", name);
    if (!s) throw Error(ErrorCode::kSchema, std::string("missing field ") + name);
    value = parse_number<T>(*s, name);
  }
  template <typename K, typename T>
  void map(const char* name, std::map<K, T>& m) {
    m.clear();
    const auto it = rows.find(name);
    if (it == rows.end()) return;
    for (const auto& [k, v] : it->second) m[parse_number<K>(k, name)] = parse_number<T>(v, name);
  }
};

json comparison_to_json(const std::vector<ComparisonRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back({{"statistic", row.statistic},
                   {"key", row.key},
                   {"count", row.count},
                   {"total", row.total},
                   {"empirical", row.empirical},
                   {"theoretical", row.theoretical},
                   {"stderr", row.stderr_},
                   {"z", row.z ? json(*row.z) : json(nullptr)}});
  }
  return arr;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string report_to_string(const ExperimentReport& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json out;
    out["schema"] = "geodesic-lab";
    out["version"] = kSchemaVersion;
    visit_fields(r, JsonWriter{out});
    out["comparison"] = comparison_to_json(r.comparison);
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << kCsvMagic << '\n' << "section,key,value\n";
  CsvWriter writer{out};
  visit_fields(r, writer);
  // Comparison rows: statistic,key,count,total,empirical,theoretical,stderr,z
  for (const auto& row : r.comparison) {
    out << "comparison," << row.statistic << ':' << row.key << ',' << row.count << ';' << row.total << ';'
        << format_number(row.empirical) << ';' << format_number(row.theoretical) << ';'
        << format_number(row.stderr_) << ';' << (row.z ? format_number(*row.z) : std::string()) << '\n';
    ++writer.rows;
  }
  out << "end,rows," << writer.rows << '\n';
  return out.str();
}

ExperimentReport report_from_string(const std::string& text, ReportFormat format) {
  ExperimentReport r;
  if (format == ReportFormat::kJson) {
    json in;
    try {
      in = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, std::string("malformed JSON report: ") + e.what());
    }
    try {
      if (in.value("schema", std::string()) != "geodesic-lab") throw Error(ErrorCode::kSchema, "not a geodesic-lab report");
      const int version = in.at("version").get<int>();
      if (version != kSchemaVersion) {
        throw Error(ErrorCode::kSchema, "report version " + std::to_string(version) + " unsupported (expected " +
                                            std::to_string(kSchemaVersion) + ")");
      }
      visit_fields(r, JsonReader{in});
      for (const auto& row : in.at("comparison")) {
        ComparisonRow c;
        c.statistic = row.at("statistic").get<std::string>();
        c.key = row.at("key").get<std::int64_t>();
        c.count = row.at("count").get<std::uint64_t>();
        c.total = row.at("total").get<std::uint64_t>();
        c.empirical = row.at("empirical").get<double>();
        c.theoretical = row.at("theoretical").get<double>();
        c.stderr_ = row.at("stderr").get<double>();
        if (!row.at("z").is_null()) c.z = row.at("z").get<double>();
        r.comparison.push_back(std::move(c));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, std::string("bad JSON report: ") + e.what());
    }
    return r;
  }

  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("#geodesic-lab", 0) != 0) {
    throw Error(ErrorCode::kSchema, "missing '#geodesic-lab' header");
  }
  if (line != kCsvMagic) {
    throw Error(ErrorCode::kSchema, "report version '" + line.substr(14) + "' unsupported (expected v" +
                                        std::to_string(kSchemaVersion) + ")");
  }
  if (!std::getline(in, line) || line != "section,key,value") throw Error(ErrorCode::kSchema, "missing column header");
  CsvRows rows;
  std::uint64_t count = 0;
  bool ended = false;
  while (std::getline(in, line)) {
    const auto cells = split_csv(line);
    if (cells.size() != 3) throw Error(ErrorCode::kSchema, "bad row '" + line + "'");
    if (cells[0] == "end") {
      if (parse_number<std::uint64_t>(cells[2], "end") != count) throw Error(ErrorCode::kSchema, "row count mismatch");
      ended = true;
      break;
    }
    if (cells[0] == "comparison") {
      ComparisonRow c;
      const auto colon = cells[1].find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::kSchema, "bad comparison key");
      c.statistic = cells[1].substr(0, colon);
      c.key = parse_number<std::int64_t>(cells[1].substr(colon + 1), "comparison");
      std::vector<std::string> parts;
      std::string part;
      std::istringstream vs(cells[2]);
      while (std::getline(vs, part, ';')) parts.push_back(part);
      if (!cells[2].empty() && cells[2].back() == ';') parts.emplace_back();
      if (parts.size() != 6) throw Error(ErrorCode::kSchema, "bad comparison row");
      c.count = parse_number<std::uint64_t>(parts[0], "count");
      c.total = parse_number<std::uint64_t>(parts[1], "total");
      c.empirical = parse_number<double>(parts[2], "empirical");
      c.theoretical = parse_number<double>(parts[3], "theoretical");
      c.stderr_ = parse_number<double>(parts[4], "stderr");
      if (!parts[5].empty()) c.z = parse_number<double>(parts[5], "z");
      r.comparison.push_back(std::move(c));
    } else {
      rows[cells[0]].emplace_back(cells[1], cells[2]);
    }
    ++count;
  }
  if (!ended) throw Error(ErrorCode::kSchema, "truncated report (no end row)");
  visit_fields(r, CsvReader{rows});
  return r;
}

void save_report(const std::string& path, const ExperimentReport& r, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << report_to_string(r, format);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

ExperimentReport load_report(const std::string& path, ReportFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_string(buf.str(), format);
}

std::vector<CycleRecord> cycle_records(const Graph& g, std::uint64_t pairs, std::uint32_t paths,
                                       std::uint32_t slack_cap, RngSeed seed) {
  std::vector<CycleRecord> records;
  PairSearcher search(g);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const RngSeed ps{seed.seed, substream(seed.stream, i)};
    const auto [u, v] = sample_pair(g.num_vertices(), ps);
    const auto d = search.distance(u, v);
    if (!d) continue;
    CycleRecord rec{u, v, *d, {}, {}, {}, {}};
    rec.paths = find_almost_geodesic_paths(g, u, v, paths, slack_cap, {ps.seed, substream(ps.stream, 1)}).found.paths;
    for (std::size_t a = 0; a < rec.paths.size(); ++a) {
      for (std::size_t b = a + 1; b < rec.paths.size(); ++b) {
        rec.cycles.push_back(cycle_from_paths(rec.paths[a], rec.paths[b]));
        rec.slacks.push_back(slack_report(g, rec.cycles.back()));
        rec.midpoint_separations.push_back(midpoint_separation(g, rec.paths[a], rec.paths[b]));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string cycle_records_to_json(const std::vector<CycleRecord>& records, std::uint32_t budget_e) {
  json arr = json::array();
  for (const auto& rec : records) {
    json paths = json::array();
    for (const auto& p : rec.paths) paths.push_back(p.vertices);
    json cycles = json::array();
    for (std::size_t i = 0; i < rec.cycles.size(); ++i) {
      const auto& s = rec.slacks[i];
      cycles.push_back({{"vertices", rec.cycles[i].vertices},
                        {"length", rec.cycles[i].length()},
                        {"max_slack", s.max_slack},
                        {"argmax_pair", {s.argmax_pair.first, s.argmax_pair.second}},
                        {"diametric_slack", s.diametric_slack},
                        {"almost_geodesic", s.max_slack <= budget_e},
                        {"midpoint_separation", rec.midpoint_separations[i]}});
    }
    arr.push_back({{"u", rec.u}, {"v", rec.v}, {"distance", rec.distance}, {"paths", paths}, {"cycles", cycles}});
  }
  json out{{"schema", "geodesic-lab"}, {"version", kSchemaVersion}, {"budget_e", budget_e}, {"records", arr}};
  return out.dump(2) + "\n";
}

}  // namespace geolab
