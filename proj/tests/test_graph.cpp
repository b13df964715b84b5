#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "geolab/error.hpp"
#include "geolab/graph.hpp"

using namespace geolab;

namespace {

using Matching = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

Matching canonical(Matching m) {
  for (auto& [a, b] : m)
    if (a > b) std::swap(a, b);
  std::sort(m.begin(), m.end());
  return m;
}

// All perfect matchings of {0..k-1} by recursion on the smallest point.
void all_matchings(std::vector<std::uint64_t> points, Matching& cur, std::vector<Matching>& out) {
  if (points.empty()) {
    out.push_back(canonical(cur));
    return;
  }
  const auto first = points.front();
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto rest = points;
    const auto partner = rest[i];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    rest.erase(rest.begin());
    cur.emplace_back(first, partner);
    all_matchings(rest, cur, out);
    cur.pop_back();
  }
}

std::vector<Matching> matchings_of(std::uint64_t k) {
  std::vector<std::uint64_t> pts(k);
  for (std::uint64_t i = 0; i < k; ++i) pts[i] = i;
  Matching cur;
  std::vector<Matching> out;
  all_matchings(pts, cur, out);
  return out;
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  CounterRng a({7, 3}), b({7, 3}), c({7, 4});
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CounterRng a2({7, 3});
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a2() == c();
  CHECK(same == 0);
  CounterRng r({1, 1});
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
}

TEST_CASE("generate_pairing edge cases") {
  const Pairing p = generate_pairing(2, 1, RngSeed{123, 0});
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0] == std::pair<std::uint64_t, std::uint64_t>{0, 1});

  CHECK_THROWS_AS(generate_pairing(3, 1, RngSeed{}), Error);
  CHECK_THROWS_AS(generate_pairing(1, 2, RngSeed{}), Error);
  try {
    generate_pairing(3, 1, RngSeed{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArguments);
  }
}

TEST_CASE("pairing covers every point once") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Pairing p = generate_pairing(50, 3, RngSeed{s, 0});
    std::vector<int> seen(150, 0);
    for (auto [a, b] : p.pairs) {
      CHECK(a != b);
      ++seen[a];
      ++seen[b];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
    CHECK(pairing_to_multigraph(p).edges.size() == p.pairs.size());
  }
}

TEST_CASE("pairing is uniform over the 15 matchings of 6 points") {
  const auto all = matchings_of(6);
  REQUIRE(all.size() == 15);
  std::map<Matching, std::uint64_t> freq;
  for (const auto& m : all) freq[m] = 0;

  CounterRng rng({2024, 0});
  constexpr std::uint64_t draws = 100000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto key = canonical(generate_pairing(2, 3, rng).pairs);
    REQUIRE(freq.count(key) == 1);
    ++freq[key];
  }
  const double expected = draws / 15.0;
  double chi2 = 0.0;
  for (auto [m, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  // 0.999 quantile of chi-square with 14 degrees of freedom.
  CHECK(chi2 < 36.123);

  // First 15000 draws of a fresh stream: each frequency within 5 sigma.
  std::map<Matching, std::uint64_t> small;
  CounterRng rng2({99, 1});
  for (int i = 0; i < 15000; ++i) ++small[canonical(generate_pairing(2, 3, rng2).pairs)];
  const double p = 1.0 / 15.0;
  const double sigma = std::sqrt(15000 * p * (1 - p));
  for (const auto& m : all) CHECK(std::abs(static_cast<double>(small[m]) - 1000.0) < 5 * sigma);
}

TEST_CASE("pairing_to_multigraph projections") {
  Pairing single{2, 1, {{0, 1}}};
  auto m = pairing_to_multigraph(single);
  CHECK(m.edges == std::vector<Edge>{{0, 1}});
  CHECK(m.loop_count == 0);
  CHECK(is_simple(m));

  Pairing loops{2, 2, {{0, 1}, {2, 3}}};
  m = pairing_to_multigraph(loops);
  CHECK(m.edges == std::vector<Edge>{{0, 0}, {1, 1}});
  CHECK(m.loop_count == 2);
  CHECK(m.parallel_count == 0);
  CHECK_FALSE(is_simple(m));

  Pairing parallel{2, 2, {{0, 2}, {1, 3}}};
  m = pairing_to_multigraph(parallel);
  CHECK(m.edges == std::vector<Edge>{{0, 1}, {0, 1}});
  CHECK(m.loop_count == 0);
  CHECK(m.parallel_count == 1);
  CHECK_FALSE(is_simple(m));
}

TEST_CASE("is_simple") {
  Multigraph triangle{3, 2, {{0, 1}, {1, 2}, {0, 2}}, 0, 0};
  CHECK(is_simple(triangle));
  Multigraph loop{2, 2, {{0, 0}, {1, 1}}, 2, 0};
  CHECK_FALSE(is_simple(loop));

  // Every pairing on two cells of three points is non-simple.
  for (const auto& m : matchings_of(6)) {
    Pairing p{2, 3, m};
    CHECK_FALSE(is_simple(pairing_to_multigraph(p)));
  }
}

TEST_CASE("sample_regular_graph") {
  const auto k4 = sample_regular_graph(4, 3, {5, 0});
  CHECK(k4.graph == fixtures::complete(4));
  CHECK(k4.attempts >= 1);

  try {
    sample_regular_graph(2, 3, {1, 0}, 100);
    FAIL("expected attempts-exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAttemptsExhausted);
  }

  const auto big = sample_regular_graph(10000, 3, {42, 0});
  CHECK(big.graph.regular_degree() == 3u);
  CHECK(big.graph.num_edges() == 15000);
  for (Vertex v = 0; v < 10000; ++v) {
    REQUIRE(big.graph.degree(v) == 3);
    const auto nb = big.graph.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex w : nb) CHECK(big.graph.has_edge(w, v));
  }
}

TEST_CASE("sampling is deterministic in (n, d, seed, stream)") {
  const auto a = sample_regular_graph(500, 4, {9, 2});
  const auto b = sample_regular_graph(500, 4, {9, 2});
  const auto c = sample_regular_graph(500, 4, {9, 3});
  CHECK(serialize_graph(a.graph) == serialize_graph(b.graph));
  CHECK(serialize_graph(a.graph) != serialize_graph(c.graph));
}

TEST_CASE("graph file format") {
  const auto g = fixtures::complete(4);
  const std::string text = serialize_graph(g);
  CHECK(text == "4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n\n");
  std::istringstream in(text);
  CHECK(read_graph(in) == g);

  auto rejects = [](const std::string& s) {
    std::istringstream bad(s);
    CHECK_THROWS_AS(read_graph(bad), Error);
  };
  rejects("4 3\n0 1\n0 2\n\n");                          // too few edges
  rejects("4 3\n0 2\n0 1\n0 3\n1 2\n1 3\n2 3\n\n");      // unsorted
  rejects("4 3\n1 0\n0 2\n0 3\n1 2\n1 3\n2 3\n\n");      // u > v
  rejects("4 2\n0 1\n0 2\n0 3\n1 2\n\n");                 // not regular
  rejects("");
}

TEST_CASE("from_edges rejects non-simple input") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), Error);
  CHECK_FALSE(fixtures::tree(7).regular_degree().has_value());
}
