#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "geolab/geodesy.hpp"
#include "geolab/graph.hpp"
#include "geolab/rng.hpp"

namespace geolab {

/// Cyclic vertex sequence; the closing edge back to vertices.front() is implied.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }
  bool operator==(const Cycle&) const = default;
};

struct SlackReport {
  std::uint32_t max_slack = 0;
  std::pair<Vertex, Vertex> argmax_pair{0, 0};
  std::uint32_t diametric_slack = 0;

  bool operator==(const SlackReport&) const = default;
};

/// The additive slack e(n) a cycle may have and still count as almost geodesic.
struct EpsilonBudget {
  std::uint32_t e = 0;
  std::uint32_t omega_extra = 0;

  static constexpr std::uint32_t kDefaultOmegaExtra = 3;
  /// e = ceil(log_{d-1} log_{d-1} n) + omega_extra.
  static EpsilonBudget for_graph(std::uint64_t n, std::uint32_t d,
                                 std::uint32_t omega_extra = kDefaultOmegaExtra);
};

struct DisjointPaths {
  std::vector<GeodesicPath> paths;
  bool shortfall = false;  // fewer paths than requested
  bool used_flow = false;  // the min-cost flow fallback produced the result
};

/// Up to `count` internally vertex-disjoint u-v paths, each no longer than
/// d(u,v) + slack_cap, the first one a geodesic. Greedy lexicographic extraction
/// first; if it stalls, a min-cost unit-capacity flow over the vertices that can
/// lie on a short enough path.
DisjointPaths find_disjoint_near_geodesic_paths(const Graph& g, Vertex u, Vertex v,
                                                std::uint32_t count, std::uint32_t slack_cap);

struct AlmostGeodesicPaths {
  DisjointPaths found;
  std::uint32_t worst_slack = 0;  // max cycle slack over all path pairs
  std::uint32_t tries = 0;
};

inline constexpr std::uint32_t kDefaultPathTries = 32;

/// Path sets whose pairwise cycles all stay within `budget`. Starts from the
/// deterministic extraction, then redraws with random shortest-path tie-breaks
/// until every cycle fits or `tries` is spent. Keeps the set with the most
/// paths, then the smallest worst slack. Paths are capped at d(u,v) + budget.
AlmostGeodesicPaths find_almost_geodesic_paths(const Graph& g, Vertex u, Vertex v,
                                               std::uint32_t count, std::uint32_t budget,
                                               RngSeed seed, std::uint32_t tries = kDefaultPathTries);

/// p followed by q reversed. Both must run between the same two endpoints.
/// Throws kPathsNotDisjoint if they share an internal vertex or the result has
/// fewer than three vertices.
Cycle cycle_from_paths(const GeodesicPath& p, const GeodesicPath& q);

bool is_valid_cycle(const Graph& g, const Cycle& c);

/// Exact slack of c, one truncated BFS per cycle vertex.
SlackReport slack_report(const Graph& g, const Cycle& c);

bool is_almost_geodesic(const Graph& g, const Cycle& c, const EpsilonBudget& budget);
bool is_geodesic_cycle(const Graph& g, const Cycle& c);

/// Distance between the midpoints of two paths with common endpoints.
std::uint32_t midpoint_separation(const Graph& g, const GeodesicPath& p, const GeodesicPath& q);

/// Four-point delta of a quadruple: (S1 - S2) / 2 for the two largest of the
/// three pairwise-distance matching sums.
double four_point_delta(const std::array<std::uint32_t, 6>& d01_02_03_12_13_23);
double hyperbolicity_four_point(const Graph& g, const std::array<Vertex, 4>& quad);

struct HyperbolicityEstimate {
  double delta = 0.0;  // max over sampled quadruples, a lower bound
  std::uint64_t samples = 0;
  std::array<Vertex, 4> witness{};
  std::uint32_t sampled_diameter = 0;  // max eccentricity over sampled vertices
  double half_diameter_bound() const noexcept { return sampled_diameter / 2.0; }
};

inline constexpr std::uint32_t kEccentricitySamples = 32;

HyperbolicityEstimate hyperbolicity_estimate(const Graph& g, std::uint64_t samples, RngSeed seed);

/// Exhaustive maximum over all quadruples; all-pairs distances, so small graphs only.
double hyperbolicity_exact(const Graph& g);

}  // namespace geolab
