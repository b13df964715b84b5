#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geolab/graph.hpp"

namespace geolab {

/// Distance marker for vertices not reachable from the source. Negative so it
/// cannot be mistaken for a finite distance.
inline constexpr std::int32_t kUnreachable = -1;

/// Result of one exhaustive breadth-first search.
struct DistanceProfile {
  Vertex source = 0;
  std::vector<std::int32_t> dist;          // kUnreachable when disconnected
  std::vector<std::uint64_t> layer_sizes;  // layer_sizes[i] = |{v : dist[v] <= i}|
  std::vector<std::uint64_t> sigma;        // shortest-path counts from source

  std::optional<std::uint32_t> distance_to(Vertex v) const {
    if (dist[v] == kUnreachable) return std::nullopt;
    return static_cast<std::uint32_t>(dist[v]);
  }
};

struct GeodesicPath {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }

  auto operator<=>(const GeodesicPath&) const = default;
};

/// Throws kCountOverflow if a shortest-path count exceeds 2^64 - 1.
DistanceProfile bfs_profile(const Graph& g, Vertex u);

std::optional<std::uint32_t> distance(const Graph& g, Vertex u, Vertex v);

/// Number of distinct shortest u-v paths. Throws kInvalidArguments for
/// disconnected pairs and kCountOverflow on overflow.
std::uint64_t geodesic_count(const Graph& g, Vertex u, Vertex v);

struct GeodesicEnumeration {
  std::vector<GeodesicPath> paths;  // lexicographic order
  bool truncated = false;
};

/// Lists shortest u-v paths in lexicographic order, stopping after cap paths.
/// Walks forward from u through vertices w with d(u,w) + d(w,v) = d(u,v); it
/// uses no path counts, so it can serve as an oracle for geodesic_count.
GeodesicEnumeration enumerate_geodesics(const Graph& g, Vertex u, Vertex v, std::size_t cap);

/// Entry i is true iff the ball of radius i around u induces a tree.
std::vector<bool> layer_tree_check(const Graph& g, Vertex u, std::uint32_t i_max);

/// Cumulative ball sizes |N_0(u)|, ..., |N_radius(u)|, exploring only the ball.
std::vector<std::uint64_t> ball_sizes(const Graph& g, Vertex u, std::uint32_t radius);

/// Whether the sub-path between positions k and length-k is a geodesic.
/// Throws kInvalidArguments when 2k >= length.
bool is_k_near_geodesic(const Graph& g, const GeodesicPath& path, std::size_t k);

/// Central vertex, index size/2; on odd-length paths the one nearer the end.
Vertex midpoint(const GeodesicPath& path);

/// Whether consecutive vertices are adjacent and all vertices are distinct.
bool is_valid_path(const Graph& g, const GeodesicPath& path);

/// Distance and geodesic count for one pair, via bidirectional layered search.
struct PairGeodesics {
  std::optional<std::uint32_t> distance;
  std::uint64_t count = 0;  // 0 when disconnected
};

/// Reusable scratch space for pair queries. Each search touches only the two
/// balls grown around the endpoints, roughly 2*sqrt(n) vertices in an expander.
/// Not thread-safe; use one per worker.
class PairSearcher {
 public:
  explicit PairSearcher(const Graph& g);
  explicit PairSearcher(Graph&&) = delete;  // keeps a pointer to the graph

  /// Throws kCountOverflow on overflow.
  PairGeodesics query(Vertex u, Vertex v);
  std::optional<std::uint32_t> distance(Vertex u, Vertex v) { return query(u, v).distance; }

 private:
  struct Side {
    std::vector<std::int32_t> dist;
    std::vector<std::uint64_t> sigma;
    std::vector<Vertex> touched;
    std::vector<Vertex> frontier;
    std::int32_t radius = 0;
  };
  void reset(Side& s);
  void start(Side& s, Vertex root);
  void expand(Side& s);

  const Graph* graph_;
  Side a_;
  Side b_;
};

}  // namespace geolab
