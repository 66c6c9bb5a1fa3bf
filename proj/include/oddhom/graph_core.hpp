#ifndef ODDHOM_GRAPH_CORE_HPP
#define ODDHOM_GRAPH_CORE_HPP

#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "oddhom/graph.hpp"
#include "oddhom/rng.hpp"

namespace oddhom {

/// G(n, c/n) sample. Every one of the C(n,2) vertex pairs is an edge
/// independently with probability p = c/n. Pairs (u,v), u < v, are visited
/// in row-major order ((0,1),(0,2),...,(1,2),...) and skipped over with
/// geometric jumps (inversion of the run-length distribution), so the output
/// is a deterministic function of (n, c, seed) under the SplitMix64 stream.
inline Graph generate_gnp(Vertex n, double c, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
  if (!(c >= 0)) throw std::invalid_argument("generate_gnp: c must be >= 0");
  const double p = c / static_cast<double>(n);
  if (p > 1.0) throw std::invalid_argument("generate_gnp: c/n exceeds 1");

  std::vector<Edge> edges;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p >= 1.0) {
    edges.reserve(total);
    for (Vertex u = 0; u + 1 < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  } else if (p > 0.0 && total > 0) {
    edges.reserve(static_cast<std::size_t>(p * total * 1.1) + 16);
    SplitMix64 rng(seed);
    const double log_q = std::log1p(-p);
    std::uint64_t t = 0;
    Vertex row = 0;
    std::uint64_t row_start = 0;
    while (t < total) {
      const double jump = std::floor(std::log1p(-rng.next_unit()) / log_q);
      if (jump >= static_cast<double>(total - t)) break;
      t += static_cast<std::uint64_t>(jump);
      if (t >= total) break;
      while (t - row_start >= static_cast<std::uint64_t>(n - 1 - row)) {
        row_start += n - 1 - row;
        ++row;
      }
      edges.emplace_back(row, static_cast<Vertex>(row + 1 + (t - row_start)));
      ++t;
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

/// Maximal subgraph of minimum degree >= 2 (the union of all cycle edges),
/// obtained by repeatedly deleting vertices of degree <= 1. Vertex identities
/// are preserved: the result lives on the same vertex set, with peeled
/// vertices left isolated.
inline Graph two_core(const Graph& g) {
  const Vertex n = g.vertex_count();
  std::vector<std::uint32_t> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  std::vector<Edge> core_edges;
  for (const auto& e : g.edges())
    if (alive[e.first] && alive[e.second]) core_edges.push_back(e);
  return Graph::from_edges(n, std::move(core_edges));
}

/// Asymptotic 2-core size of G(n, c/n) for c > 1: with x in (0,1) solving
/// x e^{-x} = c e^{-c}, the core holds ~(1-x)(1-x/c) n vertices and
/// ~(1-x/c)^2 c n / 2 edges.
struct TwoCorePrediction {
  double c = 0;
  double x = 0;        // root of x e^{-x} = c e^{-c} in (0,1)
  double nu_frac = 0;  // predicted core vertices / n
  double mu_frac = 0;  // predicted core edges / n
};

inline TwoCorePrediction predict_two_core(double c) {
  if (!(c > 1.0)) throw std::invalid_argument("predict_two_core: requires c > 1");
  const double target = c * std::exp(-c);
  // x e^{-x} increases on (0,1), so bisection brackets the unique root.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(-mid) < target ? lo : hi) = mid;
  }
  TwoCorePrediction out;
  out.c = c;
  out.x = 0.5 * (lo + hi);
  out.nu_frac = (1.0 - out.x) * (1.0 - out.x / c);
  out.mu_frac = (1.0 - out.x / c) * (1.0 - out.x / c) * c / 2.0;
  return out;
}

struct ForestCheck {
  bool acyclic = true;
  std::vector<Vertex> cycle;  // one witness cycle when acyclic is false
};

/// Acyclicity test; on failure returns one cycle as a vertex sequence.
inline ForestCheck is_forest(const Graph& g) {
  const Vertex n = g.vertex_count();
  std::vector<Vertex> parent(n, kInfDist);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi];
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          // Non-tree edge (v,w): splice the two root paths at their meet.
          std::vector<Vertex> pv, pw;
          for (Vertex a = v; a != kInfDist; a = parent[a]) pv.push_back(a);
          std::vector<char> on_pv(n, 0);
          for (Vertex a : pv) on_pv[a] = 1;
          Vertex meet = w;
          while (!on_pv[meet]) {
            pw.push_back(meet);
            meet = parent[meet];
          }
          std::vector<Vertex> cycle;
          for (Vertex a : pv) {
            cycle.push_back(a);
            if (a == meet) break;
          }
          for (auto it = pw.rbegin(); it != pw.rend(); ++it) cycle.push_back(*it);
          return {false, std::move(cycle)};
        }
      }
    }
  }
  return {true, {}};
}

/// Unweighted shortest-path distances from source; kInfDist where unreachable.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.vertex_count()) throw std::out_of_range("bfs_distances: source out of range");
  std::vector<std::uint32_t> dist(g.vertex_count(), kInfDist);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex v = queue[qi];
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kInfDist) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline std::size_t component_count(const Graph& g) {
  const Vertex n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue;
  std::size_t components = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    ++components;
    seen[root] = 1;
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (Vertex w : g.neighbors(queue[qi]))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
  }
  return components;
}

}  // namespace oddhom

#endif  // ODDHOM_GRAPH_CORE_HPP
