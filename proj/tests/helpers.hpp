#ifndef ODDHOM_TESTS_HELPERS_HPP
#define ODDHOM_TESTS_HELPERS_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "oddhom/graph.hpp"
#include "oddhom/rng.hpp"

namespace oddhom::test {

inline Graph path_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph cycle_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.push_back(make_edge(0, n - 1));
  return Graph::from_edges(n, std::move(edges));
}

inline Graph complete_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph star_graph(Vertex leaves) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, std::move(edges));
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(make_edge(i, (i + 1) % 5));          // outer 5-cycle
    edges.push_back(make_edge(5 + i, 5 + (i + 2) % 5));  // inner pentagram
    edges.emplace_back(i, i + 5);                        // spokes
  }
  return Graph::from_edges(10, std::move(edges));
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (const auto& [u, v] : b.edges())
    edges.emplace_back(u + a.vertex_count(), v + a.vertex_count());
  return Graph::from_edges(a.vertex_count() + b.vertex_count(), std::move(edges));
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.push_back(make_edge(perm[u], perm[v]));
  return Graph::from_edges(g.vertex_count(), std::move(edges));
}

inline std::vector<Vertex> random_permutation(Vertex n, SplitMix64& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (Vertex i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
  return perm;
}

/// Small graph with each edge present with probability p (plain per-pair
/// draws; used as test input, not as a generator oracle).
inline Graph random_graph(Vertex n, double p, SplitMix64& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace oddhom::test

#endif  // ODDHOM_TESTS_HELPERS_HPP
