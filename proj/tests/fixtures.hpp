#pragma once

#include <vector>

#include "geolab/graph.hpp"

namespace fixtures {

using geolab::Edge;
using geolab::Graph;
using geolab::Vertex;

inline Graph complete(Vertex n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

// Sides {0,1,2} and {3,4,5}.
inline Graph k33() {
  std::vector<Edge> e;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) e.emplace_back(a, b);
  return Graph::from_edges(6, e);
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram.
inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, e);
}

inline Graph cycle(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph cycle_with_chord(Vertex n, Edge chord) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  e.push_back(chord);
  return Graph::from_edges(n, e);
}

inline Graph two_triangles() { return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

// Complete binary-ish tree: vertex i has children 2i+1, 2i+2.
inline Graph tree(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back((i - 1) / 2, i);
  return Graph::from_edges(n, e);
}

}  // namespace fixtures
