#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "geolab/cycles.hpp"
#include "geolab/error.hpp"

using namespace geolab;

namespace {

void check_disjoint(const Graph& g, Vertex u, Vertex v, const DisjointPaths& r, std::uint32_t limit) {
  for (std::size_t a = 0; a < r.paths.size(); ++a) {
    const auto& p = r.paths[a];
    CHECK(is_valid_path(g, p));
    CHECK(p.front() == u);
    CHECK(p.back() == v);
    CHECK(p.length() <= limit);
    for (std::size_t b = a + 1; b < r.paths.size(); ++b) {
      std::vector<Vertex> x(p.vertices.begin() + 1, p.vertices.end() - 1);
      std::vector<Vertex> y(r.paths[b].vertices.begin() + 1, r.paths[b].vertices.end() - 1);
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      std::vector<Vertex> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      CHECK(common.empty());
      CHECK(p != r.paths[b]);
    }
  }
  if (!r.paths.empty()) CHECK(r.paths.front().length() == *distance(g, u, v));
}

// Distance along the cycle subgraph only.
std::uint32_t cycle_only_distance(const Cycle& c, Vertex a, Vertex b) {
  const auto n = c.length();
  const auto i = static_cast<std::size_t>(std::find(c.vertices.begin(), c.vertices.end(), a) - c.vertices.begin());
  const auto j = static_cast<std::size_t>(std::find(c.vertices.begin(), c.vertices.end(), b) - c.vertices.begin());
  const auto gap = i > j ? i - j : j - i;
  return static_cast<std::uint32_t>(std::min(gap, n - gap));
}

}  // namespace

TEST_CASE("disjoint paths in K4") {
  const auto k4 = fixtures::complete(4);
  const auto r = find_disjoint_near_geodesic_paths(k4, 0, 1, 3, 2);
  REQUIRE(r.paths.size() == 3);
  CHECK(r.paths[0].vertices == std::vector<Vertex>{0, 1});
  CHECK(r.paths[1].vertices == std::vector<Vertex>{0, 2, 1});
  CHECK(r.paths[2].vertices == std::vector<Vertex>{0, 3, 1});
  CHECK_FALSE(r.shortfall);
}

TEST_CASE("disjoint paths in a 6-cycle") {
  const auto c6 = fixtures::cycle(6);
  const auto r = find_disjoint_near_geodesic_paths(c6, 0, 3, 2, 0);
  REQUIRE(r.paths.size() == 2);
  CHECK(r.paths[0].vertices == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(r.paths[1].vertices == std::vector<Vertex>{0, 5, 4, 3});
  // a third path cannot exist
  const auto more = find_disjoint_near_geodesic_paths(c6, 0, 3, 3, 5);
  CHECK(more.paths.size() == 2);
  CHECK(more.shortfall);
}

TEST_CASE("disjoint paths along a Petersen edge") {
  const auto pet = fixtures::petersen();
  for (auto [u, v] : pet.edges()) {
    const auto r = find_disjoint_near_geodesic_paths(pet, u, v, 3, 4);
    REQUIRE(r.paths.size() == 3);
    std::vector<std::size_t> lengths;
    for (const auto& p : r.paths) lengths.push_back(p.length());
    CHECK(lengths == std::vector<std::size_t>{1, 4, 4});
    check_disjoint(pet, u, v, r, 5);
  }
}

TEST_CASE("disjoint path invariants on sampled graphs") {
  const auto g = sample_regular_graph(3000, 3, {11, 0}).graph;
  CounterRng rng({11, 1});
  for (int i = 0; i < 30; ++i) {
    const auto u = static_cast<Vertex>(rng.below(3000));
    auto v = static_cast<Vertex>(rng.below(3000));
    if (u == v) continue;
    const auto r = find_disjoint_near_geodesic_paths(g, u, v, 3, 6);
    check_disjoint(g, u, v, r, *distance(g, u, v) + 6);
    CHECK(r.shortfall == (r.paths.size() < 3));
  }
}

TEST_CASE("almost geodesic path search") {
  const auto g = sample_regular_graph(3000, 3, {41, 0}).graph;
  const std::uint32_t budget = EpsilonBudget::for_graph(3000, 3).e;
  CounterRng rng({41, 1});
  int improved = 0;
  for (int i = 0; i < 40; ++i) {
    const auto u = static_cast<Vertex>(rng.below(3000));
    auto v = static_cast<Vertex>(rng.below(3000));
    if (u == v) continue;
    const auto plain = find_disjoint_near_geodesic_paths(g, u, v, 3, budget);
    const auto best = find_almost_geodesic_paths(g, u, v, 3, budget, {41, static_cast<std::uint64_t>(i)});
    check_disjoint(g, u, v, best.found, *distance(g, u, v) + budget);
    CHECK(best.found.paths.size() >= plain.paths.size());
    std::uint32_t worst = 0;
    for (std::size_t a = 0; a < best.found.paths.size(); ++a)
      for (std::size_t b = a + 1; b < best.found.paths.size(); ++b)
        worst = std::max(worst, slack_report(g, cycle_from_paths(best.found.paths[a], best.found.paths[b])).max_slack);
    CHECK(worst == best.worst_slack);
    CHECK(best.tries >= 1);
    CHECK(best.tries <= kDefaultPathTries);
    if (best.tries == 1) CHECK(best.found.paths == plain.paths);
    improved += best.found.paths != plain.paths;
    const auto again = find_almost_geodesic_paths(g, u, v, 3, budget, {41, static_cast<std::uint64_t>(i)});
    CHECK(again.found.paths == best.found.paths);
  }
  MESSAGE("pairs rerouted: " << improved);
}

TEST_CASE("cycle_from_paths") {
  auto c = cycle_from_paths({{0, 1}}, {{0, 2, 1}});
  CHECK(c.vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(c.length() == 3);

  c = cycle_from_paths({{0, 1, 2, 3}}, {{0, 5, 4, 3}});
  CHECK(c.vertices == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
  CHECK(is_valid_cycle(fixtures::cycle(6), c));

  try {
    cycle_from_paths({{0, 1, 2}}, {{0, 1, 2}});
    FAIL("expected paths-not-disjoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPathsNotDisjoint);
  }
  CHECK_THROWS_AS(cycle_from_paths({{0, 1}}, {{0, 1}}), Error);
  CHECK_THROWS_AS(cycle_from_paths({{0, 1}}, {{2, 1}}), Error);
}

TEST_CASE("slack_report examples") {
  const auto c6 = fixtures::cycle(6);
  const Cycle whole{{0, 1, 2, 3, 4, 5}};
  auto s = slack_report(c6, whole);
  CHECK(s.max_slack == 0);
  CHECK(s.diametric_slack == 0);

  const auto chord = fixtures::cycle_with_chord(6, {0, 3});
  s = slack_report(chord, whole);
  CHECK(s.max_slack == 2);
  CHECK(s.argmax_pair == std::pair<Vertex, Vertex>{0, 3});
  CHECK(s.diametric_slack == 2);
  // the shortcut is the chord, an edge off the cycle
  CHECK(cycle_only_distance(whole, 0, 3) == 3);
  CHECK(*distance(chord, 0, 3) == 1);

  const auto k4 = fixtures::complete(4);
  CHECK(slack_report(k4, {{0, 1, 2}}).max_slack == 0);
  CHECK_THROWS_AS(slack_report(k4, {{0, 1}}), Error);
}

TEST_CASE("almost geodesic and geodesic cycles") {
  const auto chord = fixtures::cycle_with_chord(6, {0, 3});
  const Cycle whole{{0, 1, 2, 3, 4, 5}};
  CHECK_FALSE(is_almost_geodesic(chord, whole, {1, 0}));
  CHECK(is_almost_geodesic(chord, whole, {2, 0}));
  CHECK(is_almost_geodesic(chord, whole, {3, 0}));
  CHECK_FALSE(is_geodesic_cycle(chord, whole));

  const auto pet = fixtures::petersen();
  const Cycle outer{{0, 1, 2, 3, 4}};
  CHECK(is_geodesic_cycle(pet, outer));
  CHECK(is_almost_geodesic(pet, outer, {0, 0}));
  CHECK(is_geodesic_cycle(fixtures::complete(4), {{0, 1, 2}}));
}

TEST_CASE("slack bounds and shortcut witness on sampled cycles") {
  const auto g = sample_regular_graph(2000, 3, {21, 0}).graph;
  CounterRng rng({21, 1});
  int cycles_checked = 0;
  for (int i = 0; i < 25; ++i) {
    const auto u = static_cast<Vertex>(rng.below(2000));
    const auto v = static_cast<Vertex>(rng.below(2000));
    if (u == v) continue;
    const auto r = find_disjoint_near_geodesic_paths(g, u, v, 3, 6);
    for (std::size_t a = 0; a < r.paths.size(); ++a) {
      for (std::size_t b = a + 1; b < r.paths.size(); ++b) {
        const Cycle c = cycle_from_paths(r.paths[a], r.paths[b]);
        REQUIRE(is_valid_cycle(g, c));
        const auto s = slack_report(g, c);
        CHECK(s.diametric_slack <= s.max_slack);
        CHECK(s.max_slack <= c.length() / 2);
        CHECK((s.max_slack == 0) == is_geodesic_cycle(g, c));
        if (is_geodesic_cycle(g, c)) CHECK(is_almost_geodesic(g, c, {0, 0}));
        if (s.max_slack > 0) {
          const auto [p, q] = s.argmax_pair;
          CHECK(*distance(g, p, q) < cycle_only_distance(c, p, q));
          CHECK(cycle_only_distance(c, p, q) - *distance(g, p, q) == s.max_slack);
        }
        ++cycles_checked;
      }
    }
  }
  CHECK(cycles_checked > 20);
}

TEST_CASE("epsilon budget") {
  // log2 log2 10^4 = 3.73 -> 4
  CHECK(EpsilonBudget::for_graph(10000, 3).e == 7);
  CHECK(EpsilonBudget::for_graph(10000, 3, 0).e == 4);
  CHECK(EpsilonBudget::for_graph(65536, 3, 0).e == 4);  // log2 16 = 4 exactly
}

TEST_CASE("midpoint separation") {
  const auto c8 = fixtures::cycle(8);
  const GeodesicPath p{{0, 1, 2, 3, 4}}, q{{0, 7, 6, 5, 4}};
  CHECK(midpoint_separation(c8, p, p) == 0);
  CHECK(midpoint_separation(c8, p, q) == 4);
  const auto c12 = fixtures::cycle(12);
  CHECK(midpoint_separation(c12, {{0, 1, 2, 3, 4, 5, 6}}, {{0, 11, 10, 9, 8, 7, 6}}) == 6);
  // odd arcs have no antipodal midpoints
  const auto c10 = fixtures::cycle(10);
  CHECK(midpoint_separation(c10, {{0, 1, 2, 3, 4, 5}}, {{0, 9, 8, 7, 6, 5}}) == 4);
  CHECK_THROWS_AS(midpoint_separation(c8, p, {{0, 1}}), Error);
}

TEST_CASE("four-point hyperbolicity") {
  const auto t = fixtures::tree(31);
  CounterRng rng({3, 3});
  for (int i = 0; i < 200; ++i) {
    std::array<Vertex, 4> q{};
    for (auto& x : q) x = static_cast<Vertex>(rng.below(31));
    CHECK(hyperbolicity_four_point(t, q) == 0.0);
  }
  const auto c8 = fixtures::cycle(8);
  CHECK(hyperbolicity_four_point(c8, {0, 2, 4, 6}) == 2.0);
  CHECK(hyperbolicity_four_point(c8, {1, 1, 1, 1}) == 0.0);
  CHECK(hyperbolicity_exact(c8) == 2.0);
  CHECK(hyperbolicity_exact(t) == 0.0);

  // permutation invariance
  const auto g = sample_regular_graph(500, 3, {4, 0}).graph;
  for (int i = 0; i < 30; ++i) {
    std::array<Vertex, 4> q{};
    for (auto& x : q) x = static_cast<Vertex>(rng.below(500));
    const double ref = hyperbolicity_four_point(g, q);
    std::sort(q.begin(), q.end());
    do {
      CHECK(hyperbolicity_four_point(g, q) == ref);
    } while (std::next_permutation(q.begin(), q.end()));
  }
}

TEST_CASE("hyperbolicity estimate") {
  const auto t = fixtures::tree(63);
  CHECK(hyperbolicity_estimate(t, 500, {1, 0}).delta == 0.0);
  const auto c8 = fixtures::cycle(8);
  const auto est = hyperbolicity_estimate(c8, 5000, {1, 0});
  CHECK(est.delta == 2.0);
  CHECK(est.delta <= est.half_diameter_bound());
  const auto again = hyperbolicity_estimate(c8, 5000, {1, 0});
  CHECK(again.witness == est.witness);
}
