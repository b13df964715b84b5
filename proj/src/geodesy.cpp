#include "geolab/geodesy.hpp"

#include <algorithm>

#include "geolab/error.hpp"

namespace geolab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kCountOverflow, "shortest-path count exceeds 2^64-1");
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kCountOverflow, "shortest-path count exceeds 2^64-1");
  }
  return out;
}

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.num_vertices()) {
    throw Error(ErrorCode::kInvalidArguments, "vertex " + std::to_string(v) + " out of range");
  }
}

// Plain BFS distances; no counting.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::int32_t> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace

DistanceProfile bfs_profile(const Graph& g, Vertex u) {
  check_vertex(g, u);
  const std::uint32_t n = g.num_vertices();
  DistanceProfile p;
  p.source = u;
  p.dist.assign(n, kUnreachable);
  p.sigma.assign(n, 0);
  p.dist[u] = 0;
  p.sigma[u] = 1;
  std::vector<Vertex> queue{u};
  queue.reserve(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (p.dist[y] == kUnreachable) {
        p.dist[y] = p.dist[x] + 1;
        p.sigma[y] = p.sigma[x];
        queue.push_back(y);
      } else if (p.dist[y] == p.dist[x] + 1) {
        p.sigma[y] = checked_add(p.sigma[y], p.sigma[x]);
      }
    }
  }
  // queue is in nondecreasing distance order
  std::size_t reached = 0;
  for (std::int32_t layer = 0; reached < queue.size(); ++layer) {
    while (reached < queue.size() && p.dist[queue[reached]] == layer) ++reached;
    p.layer_sizes.push_back(reached);
  }
  return p;
}

std::optional<std::uint32_t> distance(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g, u);
  check_vertex(g, v);
  const auto dist = bfs_distances(g, u);
  if (dist[v] == kUnreachable) return std::nullopt;
  return static_cast<std::uint32_t>(dist[v]);
}

std::uint64_t geodesic_count(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g, v);
  const DistanceProfile p = bfs_profile(g, u);
  if (p.dist[v] == kUnreachable) {
    throw Error(ErrorCode::kInvalidArguments, "vertices are not connected");
  }
  return p.sigma[v];
}

GeodesicEnumeration enumerate_geodesics(const Graph& g, Vertex u, Vertex v, std::size_t cap) {
  check_vertex(g, u);
  check_vertex(g, v);
  if (cap == 0) throw Error(ErrorCode::kInvalidArguments, "cap must be at least 1");
  const auto from_u = bfs_distances(g, u);
  const auto to_v = bfs_distances(g, v);
  GeodesicEnumeration out;
  if (from_u[v] == kUnreachable) return out;
  const std::int32_t total = from_u[v];

  GeodesicPath current{{u}};
  // Depth-first over sorted neighbor lists yields lexicographic order.
  auto walk = [&](auto&& self, Vertex x) -> bool {
    if (x == v) {
      if (out.paths.size() == cap) {
        out.truncated = true;
        return false;
      }
      out.paths.push_back(current);
      return true;
    }
    for (Vertex y : g.neighbors(x)) {
      if (from_u[y] == from_u[x] + 1 && from_u[y] + to_v[y] == total) {
        current.vertices.push_back(y);
        const bool more = self(self, y);
        current.vertices.pop_back();
        if (!more) return false;
      }
    }
    return true;
  };
  walk(walk, u);
  return out;
}

std::vector<std::uint64_t> ball_sizes(const Graph& g, Vertex u, std::uint32_t radius) {
  check_vertex(g, u);
  std::vector<std::uint64_t> sizes{1};
  std::vector<Vertex> frontier{u};
  std::vector<Vertex> seen{u};
  std::vector<std::uint8_t> mark(g.num_vertices(), 0);
  mark[u] = 1;
  for (std::uint32_t r = 0; r < radius; ++r) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (Vertex y : g.neighbors(x)) {
        if (!mark[y]) {
          mark[y] = 1;
          next.push_back(y);
        }
      }
    }
    sizes.push_back(sizes.back() + next.size());
    frontier = std::move(next);
  }
  return sizes;
}

std::vector<bool> layer_tree_check(const Graph& g, Vertex u, std::uint32_t i_max) {
  check_vertex(g, u);
  std::vector<std::int32_t> dist(g.num_vertices(), kUnreachable);
  dist[u] = 0;
  std::vector<Vertex> frontier{u};
  std::uint64_t vertices = 1;
  std::uint64_t edges = 0;
  std::vector<bool> out;
  for (std::uint32_t i = 0; i <= i_max; ++i) {
    if (i > 0) {
      // Discover layer i, then count every edge whose farther endpoint lies in it.
      std::vector<Vertex> next;
      for (Vertex x : frontier) {
        for (Vertex y : g.neighbors(x)) {
          if (dist[y] == kUnreachable) {
            dist[y] = static_cast<std::int32_t>(i);
            next.push_back(y);
          }
        }
      }
      for (Vertex y : next) {
        for (Vertex z : g.neighbors(y)) {
          if (dist[z] == static_cast<std::int32_t>(i - 1)) {
            ++edges;
          } else if (dist[z] == static_cast<std::int32_t>(i) && y < z) {
            ++edges;
          }
        }
      }
      vertices += next.size();
      frontier = std::move(next);
    }
    // The ball is connected, so it is a tree iff |E| = |V| - 1.
    out.push_back(edges + 1 == vertices);
  }
  return out;
}

bool is_valid_path(const Graph& g, const GeodesicPath& path) {
  if (path.vertices.empty()) return false;
  for (Vertex v : path.vertices) {
    if (v >= g.num_vertices()) return false;
  }
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    if (!g.has_edge(path.vertices[i - 1], path.vertices[i])) return false;
  }
  std::vector<Vertex> sorted = path.vertices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool is_k_near_geodesic(const Graph& g, const GeodesicPath& path, std::size_t k) {
  const std::size_t len = path.length();
  if (2 * k >= len) {
    throw Error(ErrorCode::kInvalidArguments,
                "k=" + std::to_string(k) + " too large for path of length " + std::to_string(len));
  }
  if (!is_valid_path(g, path)) throw Error(ErrorCode::kInvalidArguments, "not a path in the graph");
  const auto d = distance(g, path.vertices[k], path.vertices[len - k]);
  return d && *d == len - 2 * k;
}

Vertex midpoint(const GeodesicPath& path) {
  if (path.vertices.empty()) throw Error(ErrorCode::kInvalidArguments, "empty path");
  return path.vertices[path.vertices.size() / 2];
}

PairSearcher::PairSearcher(const Graph& g) : graph_(&g) {
  for (Side* s : {&a_, &b_}) {
    s->dist.assign(g.num_vertices(), kUnreachable);
    s->sigma.assign(g.num_vertices(), 0);
  }
}

void PairSearcher::reset(Side& s) {
  for (Vertex v : s.touched) {
    s.dist[v] = kUnreachable;
    s.sigma[v] = 0;
  }
  s.touched.clear();
  s.frontier.clear();
  s.radius = 0;
}

void PairSearcher::start(Side& s, Vertex root) {
  reset(s);
  s.dist[root] = 0;
  s.sigma[root] = 1;
  s.touched.push_back(root);
  s.frontier.push_back(root);
}

void PairSearcher::expand(Side& s) {
  std::vector<Vertex> next;
  const std::int32_t r = s.radius;
  for (Vertex x : s.frontier) {
    for (Vertex y : graph_->neighbors(x)) {
      if (s.dist[y] == kUnreachable) {
        s.dist[y] = r + 1;
        s.sigma[y] = s.sigma[x];
        s.touched.push_back(y);
        next.push_back(y);
      } else if (s.dist[y] == r + 1) {
        s.sigma[y] = checked_add(s.sigma[y], s.sigma[x]);
      }
    }
  }
  s.frontier = std::move(next);
  s.radius = r + 1;
}

PairGeodesics PairSearcher::query(Vertex u, Vertex v) {
  check_vertex(*graph_, u);
  check_vertex(*graph_, v);
  if (u == v) return {0u, 1};
  start(a_, u);
  start(b_, v);
  // Invariant: the two balls are disjoint before each expansion. When the
  // expanded ball first meets the other, d(u,v) = radius_a + radius_b and
  // every geodesic crosses the meeting layer exactly once.
  for (;;) {
    auto cost = [&](const Side& s) {
      std::uint64_t c = 0;
      for (Vertex x : s.frontier) c += graph_->degree(x);
      return c;
    };
    Side& grow = cost(a_) <= cost(b_) ? a_ : b_;
    Side& other = &grow == &a_ ? b_ : a_;
    if (grow.frontier.empty()) return {std::nullopt, 0};
    expand(grow);
    std::uint64_t count = 0;
    bool met = false;
    for (Vertex w : grow.frontier) {
      if (other.dist[w] != kUnreachable) {
        met = true;
        count = checked_add(count, checked_mul(grow.sigma[w], other.sigma[w]));
      }
    }
    if (met) return {static_cast<std::uint32_t>(a_.radius + b_.radius), count};
  }
}

}  // namespace geolab
