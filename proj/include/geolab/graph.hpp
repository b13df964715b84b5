#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geolab/rng.hpp"

namespace geolab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// A perfect matching on n*d labelled points. Point p belongs to cell p / d.
struct Pairing {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
};

/// Cell projection of a pairing. Loops and parallel edges are kept.
struct Multigraph {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<Edge> edges;  // each stored with first <= second
  std::uint64_t loop_count = 0;
  // Every edge beyond the first between the same two endpoints (loops included).
  std::uint64_t parallel_count = 0;
};

/// Immutable simple undirected graph in compressed adjacency form. Neighbor
/// lists are sorted ascending. Most graphs here are d-regular, but fixtures such
/// as trees are not, so regularity is a property rather than an invariant.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Throws kInvalidArguments on loops, duplicate
  /// edges or out-of-range endpoints.
  static Graph from_edges(std::uint32_t n, std::span<const Edge> edges);
  static Graph from_edges(std::uint32_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::uint32_t num_vertices() const noexcept { return n_; }
  std::uint64_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(Vertex a, Vertex b) const noexcept;

  /// The common degree when every vertex has the same degree.
  std::optional<std::uint32_t> regular_degree() const noexcept { return regular_degree_; }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::optional<std::uint32_t> regular_degree_;
};

/// Uniformly random perfect matching on n*d points.
Pairing generate_pairing(std::uint32_t n, std::uint32_t d, CounterRng& rng);
Pairing generate_pairing(std::uint32_t n, std::uint32_t d, RngSeed seed);

Multigraph pairing_to_multigraph(const Pairing& p);

bool is_simple(const Multigraph& m) noexcept;

/// Converts a simple multigraph into a Graph. Precondition: is_simple(m).
Graph to_graph(const Multigraph& m);

struct SampledGraph {
  Graph graph;
  std::uint64_t attempts = 0;
};

inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;

/// Rejection-samples pairings until the projection is simple, giving a graph
/// uniform over simple d-regular graphs on n vertices. Throws
/// kAttemptsExhausted after max_attempts rejections.
SampledGraph sample_regular_graph(std::uint32_t n, std::uint32_t d, RngSeed seed,
                                  std::uint64_t max_attempts = kDefaultMaxAttempts);

/// Text format: "n d", then one "u v" line per edge (u < v, sorted), then a
/// blank line.
void write_graph(std::ostream& out, const Graph& g);
std::string serialize_graph(const Graph& g);
/// Parses the text format and validates regularity against the header degree.
Graph read_graph(std::istream& in);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace geolab
