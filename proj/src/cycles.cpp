#include "geolab/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geolab/error.hpp"

namespace geolab {

EpsilonBudget EpsilonBudget::for_graph(std::uint64_t n, std::uint32_t d, std::uint32_t omega_extra) {
  if (d < 3 || n < 2) throw Error(ErrorCode::kInvalidArguments, "budget needs d >= 3 and n >= 2");
  const double base = std::log(static_cast<double>(d - 1));
  const double radius = std::log(static_cast<double>(n)) / base;
  double inner = radius > 1.0 ? std::log(radius) / base : 0.0;
  const auto e = static_cast<std::uint32_t>(std::max(0.0, std::ceil(inner - 1e-12)));
  return {e + omega_extra, omega_extra};
}

namespace {

constexpr std::int32_t kNone = -1;

// Vertices whose hash under `noise_key` falls below `noise` are skipped too.
std::vector<std::int32_t> distances_avoiding(const Graph& g, Vertex root,
                                             const std::vector<std::uint8_t>& blocked,
                                             Edge banned_edge, bool ban,
                                             std::uint64_t noise_key = 0, std::uint64_t noise = 0) {
  std::vector<std::int32_t> dist(g.num_vertices(), kNone);
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] != kNone || blocked[y]) continue;
      if (noise != 0 && y != banned_edge.first && mix64(noise_key ^ y) < noise) continue;
      if (ban && ((x == banned_edge.first && y == banned_edge.second) ||
                  (x == banned_edge.second && y == banned_edge.first))) {
        continue;
      }
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

// Min-cost flow on the vertex-split network, unit capacities, unit edge costs.
class UnitFlow {
 public:
  explicit UnitFlow(std::size_t nodes) : head_(nodes, -1) {}

  void add_arc(std::int32_t from, std::int32_t to, std::int32_t cost) {
    arcs_.push_back({to, head_[from], 1, cost});
    head_[from] = static_cast<std::int32_t>(arcs_.size() - 1);
    arcs_.push_back({from, head_[to], 0, -cost});
    head_[to] = static_cast<std::int32_t>(arcs_.size() - 1);
  }

  // One augmentation along a cheapest residual path (SPFA; residual costs can
  // be negative). Returns false when the sink is unreachable.
  bool augment(std::int32_t source, std::int32_t sink) {
    const std::size_t n = head_.size();
    std::vector<std::int64_t> cost(n, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int32_t> via(n, -1);
    std::vector<std::uint8_t> queued(n, 0);
    std::vector<std::int32_t> queue{source};
    cost[source] = 0;
    queued[source] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::int32_t x = queue[qi];
      queued[x] = 0;
      for (std::int32_t a = head_[x]; a != -1; a = arcs_[a].next) {
        const Arc& arc = arcs_[a];
        if (arc.cap == 0) continue;
        if (cost[x] + arc.cost < cost[arc.to]) {
          cost[arc.to] = cost[x] + arc.cost;
          via[arc.to] = a;
          if (!queued[arc.to]) {
            queued[arc.to] = 1;
            queue.push_back(arc.to);
          }
        }
      }
    }
    if (via[sink] == -1) return false;
    for (std::int32_t x = sink; x != source;) {
      const std::int32_t a = via[x];
      arcs_[a].cap -= 1;
      arcs_[a ^ 1].cap += 1;
      x = arcs_[a ^ 1].to;
    }
    return true;
  }

  // Saturated forward arcs out of `node` (flow-carrying).
  template <typename F>
  void for_each_flow_arc(std::int32_t node, F&& f) const {
    for (std::int32_t a = head_[node]; a != -1; a = arcs_[a].next) {
      if ((a & 1) == 0 && arcs_[a].cap == 0) f(arcs_[a].to);
    }
  }

 private:
  struct Arc {
    std::int32_t to;
    std::int32_t next;
    std::int32_t cap;
    std::int32_t cost;
  };
  std::vector<std::int32_t> head_;
  std::vector<Arc> arcs_;
};

std::vector<GeodesicPath> flow_paths(const Graph& g, Vertex u, Vertex v, std::uint32_t count,
                                     std::uint32_t limit) {
  const auto du = distances_avoiding(g, u, std::vector<std::uint8_t>(g.num_vertices(), 0), {}, false);
  const auto dv = distances_avoiding(g, v, std::vector<std::uint8_t>(g.num_vertices(), 0), {}, false);
  std::vector<Vertex> region;
  std::vector<std::int32_t> index(g.num_vertices(), kNone);
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    if (du[w] != kNone && dv[w] != kNone && static_cast<std::uint32_t>(du[w] + dv[w]) <= limit) {
      index[w] = static_cast<std::int32_t>(region.size());
      region.push_back(w);
    }
  }
  // Node 2i is w_in, 2i+1 is w_out.
  UnitFlow flow(2 * region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Vertex w = region[i];
    const auto in = static_cast<std::int32_t>(2 * i);
    if (w != u && w != v) flow.add_arc(in, in + 1, 0);
    if (w == v) continue;
    for (Vertex y : g.neighbors(w)) {
      if (index[y] == kNone || y == u) continue;
      flow.add_arc(in + 1, 2 * index[y], 1);
    }
  }
  const std::int32_t source = 2 * index[u] + 1;
  const std::int32_t sink = 2 * index[v];

  auto decompose = [&](std::uint32_t k) {
    std::vector<GeodesicPath> paths;
    flow.for_each_flow_arc(source, [&](std::int32_t first) {
      GeodesicPath p{{u}};
      std::int32_t node = first;
      while (node != sink) {
        p.vertices.push_back(region[static_cast<std::size_t>(node / 2)]);
        std::int32_t next = -1;
        flow.for_each_flow_arc(node + 1, [&](std::int32_t t) { next = t; });
        node = next;
      }
      p.vertices.push_back(v);
      paths.push_back(std::move(p));
    });
    (void)k;
    std::sort(paths.begin(), paths.end(), [](const GeodesicPath& a, const GeodesicPath& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      return a.vertices < b.vertices;
    });
    return paths;
  };

  std::vector<GeodesicPath> best;
  for (std::uint32_t k = 1; k <= count; ++k) {
    if (!flow.augment(source, sink)) break;
    auto paths = decompose(k);
    const bool fits = std::all_of(paths.begin(), paths.end(),
                                  [&](const GeodesicPath& p) { return p.length() <= limit; });
    if (fits && paths.front().length() == static_cast<std::size_t>(du[v])) best = std::move(paths);
  }
  return best;
}

}  // namespace

namespace {

// Repeated shortest-path extraction with used internal vertices blocked. With
// an rng the next hop is drawn among all shortest continuations, otherwise the
// smallest id wins. A nonzero `noise` (a fraction of 2^64) also hides random
// vertices from every path after the first.
std::vector<GeodesicPath> greedy_paths(const Graph& g, Vertex u, Vertex v, std::uint32_t count,
                                       std::uint32_t limit, CounterRng* rng, std::uint64_t noise = 0) {
  const std::uint64_t noise_key = rng ? (*rng)() : 0;
  std::vector<std::uint8_t> blocked(g.num_vertices(), 0);
  std::vector<GeodesicPath> paths;
  std::vector<Vertex> options;
  bool direct_used = false;
  while (paths.size() < count) {
    const auto to_v = distances_avoiding(g, v, blocked, {u, v}, direct_used, noise_key,
                                         paths.empty() ? 0 : noise);
    if (to_v[u] == kNone || static_cast<std::uint32_t>(to_v[u]) > limit) break;
    GeodesicPath p{{u}};
    for (Vertex x = u; x != v;) {
      options.clear();
      for (Vertex y : g.neighbors(x)) {
        if (blocked[y] || to_v[y] != to_v[x] - 1) continue;
        if (direct_used && x == u && y == v) continue;
        options.push_back(y);
        if (!rng) break;
      }
      x = options[rng ? rng->below(options.size()) : 0];
      p.vertices.push_back(x);
    }
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) blocked[p.vertices[i]] = 1;
    if (p.length() == 1) direct_used = true;
    paths.push_back(std::move(p));
  }
  return paths;
}

std::uint32_t worst_cycle_slack(const Graph& g, const std::vector<GeodesicPath>& paths) {
  std::uint32_t worst = 0;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      worst = std::max(worst, slack_report(g, cycle_from_paths(paths[a], paths[b])).max_slack);
    }
  }
  return worst;
}

std::uint32_t path_limit(const Graph& g, Vertex u, Vertex v, std::uint32_t slack_cap) {
  if (u >= g.num_vertices() || v >= g.num_vertices() || u == v) {
    throw Error(ErrorCode::kInvalidArguments, "need two distinct vertices");
  }
  const auto base = distances_avoiding(g, v, std::vector<std::uint8_t>(g.num_vertices(), 0), {}, false);
  if (base[u] == kNone) throw Error(ErrorCode::kInvalidArguments, "vertices are not connected");
  return static_cast<std::uint32_t>(base[u]) + slack_cap;
}

}  // namespace

DisjointPaths find_disjoint_near_geodesic_paths(const Graph& g, Vertex u, Vertex v,
                                                std::uint32_t count, std::uint32_t slack_cap) {
  const std::uint32_t limit = path_limit(g, u, v, slack_cap);
  if (count == 0) throw Error(ErrorCode::kInvalidArguments, "count must be at least 1");
  DisjointPaths out;
  out.paths = greedy_paths(g, u, v, count, limit, nullptr);
  if (out.paths.size() < count) {
    auto alt = flow_paths(g, u, v, count, limit);
    if (alt.size() > out.paths.size()) {
      out.paths = std::move(alt);
      out.used_flow = true;
    }
  }
  out.shortfall = out.paths.size() < count;
  return out;
}

AlmostGeodesicPaths find_almost_geodesic_paths(const Graph& g, Vertex u, Vertex v,
                                               std::uint32_t count, std::uint32_t budget,
                                               RngSeed seed, std::uint32_t tries) {
  AlmostGeodesicPaths best;
  best.found = find_disjoint_near_geodesic_paths(g, u, v, count, budget);
  best.worst_slack = worst_cycle_slack(g, best.found.paths);
  best.tries = 1;
  const std::uint32_t limit = path_limit(g, u, v, budget);
  CounterRng rng(seed);
  while (best.tries < tries && (best.found.shortfall || best.worst_slack > budget)) {
    ++best.tries;
    // Alternate plain tie-break redraws with ones that hide 5-20% of vertices.
    const std::uint64_t noise = (best.tries % 4) * (std::numeric_limits<std::uint64_t>::max() / 20);
    auto paths = greedy_paths(g, u, v, count, limit, &rng, noise);
    if (paths.size() < best.found.paths.size()) continue;
    const std::uint32_t worst = worst_cycle_slack(g, paths);
    if (paths.size() == best.found.paths.size() && worst >= best.worst_slack) continue;
    best.found = {std::move(paths), false, false};
    best.found.shortfall = best.found.paths.size() < count;
    best.worst_slack = worst;
  }
  return best;
}

Cycle cycle_from_paths(const GeodesicPath& p, const GeodesicPath& q) {
  if (p.vertices.size() < 2 || q.vertices.size() < 2 || p.front() != q.front() ||
      p.back() != q.back()) {
    throw Error(ErrorCode::kInvalidArguments, "paths must share both endpoints");
  }
  std::vector<Vertex> inner_p(p.vertices.begin() + 1, p.vertices.end() - 1);
  std::vector<Vertex> inner_q(q.vertices.begin() + 1, q.vertices.end() - 1);
  std::sort(inner_p.begin(), inner_p.end());
  std::sort(inner_q.begin(), inner_q.end());
  std::vector<Vertex> shared;
  std::set_intersection(inner_p.begin(), inner_p.end(), inner_q.begin(), inner_q.end(),
                        std::back_inserter(shared));
  if (!shared.empty()) {
    throw Error(ErrorCode::kPathsNotDisjoint, "shared internal vertex " + std::to_string(shared[0]));
  }
  Cycle c{p.vertices};
  c.vertices.insert(c.vertices.end(), q.vertices.rbegin() + 1, q.vertices.rend() - 1);
  if (c.length() < 3) throw Error(ErrorCode::kPathsNotDisjoint, "paths coincide");
  return c;
}

bool is_valid_cycle(const Graph& g, const Cycle& c) {
  const std::size_t len = c.length();
  if (len < 3) return false;
  GeodesicPath open{c.vertices};
  return is_valid_path(g, open) && g.has_edge(c.vertices.back(), c.vertices.front());
}

SlackReport slack_report(const Graph& g, const Cycle& c) {
  if (!is_valid_cycle(g, c)) throw Error(ErrorCode::kInvalidArguments, "not a cycle of the graph");
  const std::size_t len = c.length();
  const std::size_t half = len / 2;
  PairSearcher search(g);
  SlackReport r;
  r.argmax_pair = {c.vertices[0], c.vertices[0]};
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      const std::size_t cyclic = std::min(j - i, len - (j - i));
      const auto graph_dist = *search.distance(c.vertices[i], c.vertices[j]);
      const auto slack = static_cast<std::uint32_t>(cyclic - graph_dist);
      if (slack > r.max_slack) {
        r.max_slack = slack;
        r.argmax_pair = {c.vertices[i], c.vertices[j]};
      }
      if (cyclic == half) r.diametric_slack = std::max(r.diametric_slack, slack);
    }
  }
  return r;
}

bool is_almost_geodesic(const Graph& g, const Cycle& c, const EpsilonBudget& budget) {
  return slack_report(g, c).max_slack <= budget.e;
}

bool is_geodesic_cycle(const Graph& g, const Cycle& c) { return slack_report(g, c).max_slack == 0; }

std::uint32_t midpoint_separation(const Graph& g, const GeodesicPath& p, const GeodesicPath& q) {
  if (p.vertices.empty() || q.vertices.empty() || p.front() != q.front() || p.back() != q.back()) {
    throw Error(ErrorCode::kInvalidArguments, "paths must share both endpoints");
  }
  const auto d = distance(g, midpoint(p), midpoint(q));
  if (!d) throw Error(ErrorCode::kInvalidArguments, "midpoints are not connected");
  return *d;
}

double four_point_delta(const std::array<std::uint32_t, 6>& d) {
  // Matchings: {01,23}, {02,13}, {03,12}.
  std::array<std::uint64_t, 3> sums{std::uint64_t{d[0]} + d[5], std::uint64_t{d[1]} + d[4],
                                    std::uint64_t{d[2]} + d[3]};
  std::sort(sums.begin(), sums.end(), std::greater<>());
  return static_cast<double>(sums[0] - sums[1]) / 2.0;
}

namespace {

std::array<std::uint32_t, 6> quad_distances(PairSearcher& search, const std::array<Vertex, 4>& q) {
  std::array<std::uint32_t, 6> out{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const auto d = search.distance(q[i], q[j]);
      if (!d) throw Error(ErrorCode::kInvalidArguments, "quadruple spans several components");
      out[k++] = *d;
    }
  }
  return out;
}

}  // namespace

double hyperbolicity_four_point(const Graph& g, const std::array<Vertex, 4>& quad) {
  PairSearcher search(g);
  return four_point_delta(quad_distances(search, quad));
}

HyperbolicityEstimate hyperbolicity_estimate(const Graph& g, std::uint64_t samples, RngSeed seed) {
  if (samples == 0) throw Error(ErrorCode::kInvalidArguments, "samples must be at least 1");
  const std::uint32_t n = g.num_vertices();
  CounterRng rng(seed);
  PairSearcher search(g);
  HyperbolicityEstimate est;
  est.samples = samples;
  bool first = true;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::array<Vertex, 4> q{};
    for (auto& x : q) x = static_cast<Vertex>(rng.below(n));
    const double delta = four_point_delta(quad_distances(search, q));
    if (first || delta > est.delta) {
      est.delta = delta;
      est.witness = q;
      first = false;
    }
  }
  for (std::uint32_t s = 0; s < kEccentricitySamples; ++s) {
    const DistanceProfile p = bfs_profile(g, static_cast<Vertex>(rng.below(n)));
    est.sampled_diameter = std::max(est.sampled_diameter,
                                    static_cast<std::uint32_t>(p.layer_sizes.size() - 1));
  }
  return est;
}

double hyperbolicity_exact(const Graph& g) {
  const std::uint32_t n = g.num_vertices();
  std::vector<std::vector<std::int32_t>> dist;
  dist.reserve(n);
  for (Vertex v = 0; v < n; ++v) dist.push_back(bfs_profile(g, v).dist);
  double best = 0.0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex d = c + 1; d < n; ++d) {
          const std::array<std::int32_t, 6> ds{dist[a][b], dist[a][c], dist[a][d],
                                               dist[b][c], dist[b][d], dist[c][d]};
          if (std::any_of(ds.begin(), ds.end(), [](auto x) { return x == kUnreachable; })) {
            throw Error(ErrorCode::kInvalidArguments, "graph is disconnected");
          }
          std::array<std::uint32_t, 6> du{};
          std::transform(ds.begin(), ds.end(), du.begin(), [](auto x) { return static_cast<std::uint32_t>(x); });
          best = std::max(best, four_point_delta(du));
        }
      }
    }
  }
  return best;
}

}  // namespace geolab
