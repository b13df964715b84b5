#include "geolab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "geolab/error.hpp"

namespace geolab {

Graph Graph::from_edges(std::uint32_t n, std::span<const Edge> edges) {
  Graph g;
  g.n_ = n;
  std::vector<std::uint64_t> degree(n, 0);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::kInvalidArguments,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range");
    }
    if (a == b) throw Error(ErrorCode::kInvalidArguments, "self-loop at " + std::to_string(a));
    ++degree[a];
    ++degree[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [a, b] : edges) {
    g.adjacency_[cursor[a]++] = b;
    g.adjacency_[cursor[b]++] = a;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw Error(ErrorCode::kInvalidArguments, "parallel edge at vertex " + std::to_string(v));
    }
  }
  if (n > 0 && std::all_of(degree.begin(), degree.end(), [&](auto k) { return k == degree[0]; })) {
    g.regular_degree_ = static_cast<std::uint32_t>(degree[0]);
  }
  return g;
}

bool Graph::has_edge(Vertex a, Vertex b) const noexcept {
  if (a >= n_ || b >= n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

void check_pairing_args(std::uint32_t n, std::uint32_t d) {
  if (n < 2) throw Error(ErrorCode::kInvalidArguments, "n must be at least 2");
  if (d < 1) throw Error(ErrorCode::kInvalidArguments, "d must be at least 1");
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::kInvalidArguments, "n*d must be even");
  }
}

}  // namespace

Pairing generate_pairing(std::uint32_t n, std::uint32_t d, CounterRng& rng) {
  check_pairing_args(n, d);
  const std::uint64_t points = static_cast<std::uint64_t>(n) * d;
  std::vector<std::uint64_t> perm(points);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  // Pairing consecutive entries of a uniform permutation is a uniform matching.
  for (std::uint64_t i = points - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(i + 1)]);
  }
  Pairing p{n, d, {}};
  p.pairs.reserve(points / 2);
  for (std::uint64_t i = 0; i < points; i += 2) {
    p.pairs.emplace_back(std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]));
  }
  return p;
}

Pairing generate_pairing(std::uint32_t n, std::uint32_t d, RngSeed seed) {
  CounterRng rng(seed);
  return generate_pairing(n, d, rng);
}

Multigraph pairing_to_multigraph(const Pairing& p) {
  Multigraph m{p.n, p.d, {}, 0, 0};
  m.edges.reserve(p.pairs.size());
  for (auto [x, y] : p.pairs) {
    auto a = static_cast<Vertex>(x / p.d);
    auto b = static_cast<Vertex>(y / p.d);
    if (a > b) std::swap(a, b);
    if (a == b) ++m.loop_count;
    m.edges.emplace_back(a, b);
  }
  std::vector<Edge> sorted = m.edges;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) ++m.parallel_count;
  }
  return m;
}

bool is_simple(const Multigraph& m) noexcept { return m.loop_count == 0 && m.parallel_count == 0; }

Graph to_graph(const Multigraph& m) { return Graph::from_edges(m.n, m.edges); }

SampledGraph sample_regular_graph(std::uint32_t n, std::uint32_t d, RngSeed seed,
                                  std::uint64_t max_attempts) {
  check_pairing_args(n, d);
  CounterRng rng(seed);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Multigraph m = pairing_to_multigraph(generate_pairing(n, d, rng));
    if (is_simple(m)) return {to_graph(m), attempt};
  }
  throw Error(ErrorCode::kAttemptsExhausted,
              "no simple graph after " + std::to_string(max_attempts) + " pairings (n=" +
                  std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.regular_degree().value_or(0) << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  out << '\n';
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

Graph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "missing header line");
  std::istringstream header(line);
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  if (!(header >> n >> d) || n == 0 || n > UINT32_MAX) {
    throw Error(ErrorCode::kSchema, "bad header '" + line + "'");
  }
  const std::uint64_t expected = n * d / 2;
  std::vector<Edge> edges;
  edges.reserve(expected);
  while (std::getline(in, line) && !line.empty()) {
    std::istringstream row(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(row >> u >> v)) throw Error(ErrorCode::kSchema, "bad edge line '" + line + "'");
    if (u >= v || v >= n) throw Error(ErrorCode::kSchema, "edge line must satisfy u < v < n: '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.size() != expected) {
    throw Error(ErrorCode::kSchema, "expected " + std::to_string(expected) + " edges, found " +
                                        std::to_string(edges.size()));
  }
  if (!std::is_sorted(edges.begin(), edges.end())) {
    throw Error(ErrorCode::kSchema, "edge lines are not sorted");
  }
  Graph g = Graph::from_edges(static_cast<std::uint32_t>(n), edges);
  if (g.regular_degree() != static_cast<std::uint32_t>(d)) {
    throw Error(ErrorCode::kSchema, "graph is not " + std::to_string(d) + "-regular");
  }
  return g;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_graph(out, g);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace geolab
