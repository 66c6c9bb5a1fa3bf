#ifndef ODDHOM_DECOMPOSITION_HPP
#define ODDHOM_DECOMPOSITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/graph_core.hpp"

namespace oddhom {

enum class MClass : std::uint8_t {
  kLongCycleCenter,  // center edge of a long degree-2 arc (M1)
  kShortCycleBreak,  // arbitrary edge of a remaining cycle (M2)
};

/// Edge partition E(G) = F u M with F a forest and the edges of M pairwise
/// at F-distance >= k, where the F-distance of two edges is the minimum
/// forest-path distance over their endpoint pairs (infinite across forest
/// components).
struct Decomposition {
  Graph forest;
  std::vector<Edge> m_edges;
  std::vector<MClass> m_tags;  // parallel to m_edges
  std::uint32_t k = 0;
};

struct DistanceViolation {
  Edge a, b;
  std::uint32_t dist = 0;
};

/// Honest negative outcome: the structural hypotheses (sparse, well-separated
/// cycles) failed on this instance. Expected with low probability; not an error.
struct StructureFailure {
  std::string stage;
  std::string detail;
  std::vector<DistanceViolation> violations;
};

using DecomposeResult = std::variant<Decomposition, StructureFailure>;

inline std::uint32_t default_long_cycle_threshold(Vertex n) {
  return static_cast<std::uint32_t>(std::ceil(0.05 * std::log(static_cast<double>(std::max<Vertex>(n, 2)))));
}

namespace detail {

inline std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

// One cycle of the working graph (core minus removed edges), found by
// depth-first search from the least-index vertex; empty when acyclic.
inline std::vector<Vertex> find_working_cycle(const Graph& core,
                                              const std::unordered_set<std::uint64_t>& removed) {
  const Vertex n = core.vertex_count();
  std::vector<char> visited(n, 0), on_path(n, 0);
  std::vector<Vertex> path;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (visited[root] || core.degree(root) == 0) continue;
    stack.assign(1, {root, root});
    path.clear();
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == 0) {
        visited[f.v] = 1;
        on_path[f.v] = 1;
        path.push_back(f.v);
      }
      const auto nb = core.neighbors(f.v);
      bool descended = false;
      while (f.next < nb.size()) {
        const Vertex w = nb[f.next++];
        if (w == f.parent) continue;
        if (removed.count(edge_key(make_edge(f.v, w)))) continue;
        if (on_path[w]) {
          // Back edge: cycle is the path segment from w to f.v.
          auto it = std::find(path.begin(), path.end(), w);
          std::vector<Vertex> cycle(it, path.end());
          for (Vertex x : path) on_path[x] = 0;
          return cycle;
        }
        if (!visited[w]) {
          stack.push_back({w, f.v});
          descended = true;
          break;
        }
      }
      if (!descended) {
        on_path[f.v] = 0;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return {};
}

// Center edge of an arc: edge floor(len/2) counted from the lexicographically
// smaller endpoint. A closed arc (front == back) is first rotated to start at
// its least vertex, oriented toward the smaller of that vertex's two arc
// neighbors.
inline Edge arc_center_edge(std::vector<Vertex> arc) {
  const bool closed = arc.front() == arc.back();
  if (closed) {
    arc.pop_back();
    const std::size_t k = arc.size();
    const std::size_t at =
        static_cast<std::size_t>(std::min_element(arc.begin(), arc.end()) - arc.begin());
    std::vector<Vertex> rot(k + 1);
    const bool forward = arc[(at + 1) % k] < arc[(at + k - 1) % k];
    for (std::size_t i = 0; i <= k; ++i)
      rot[i] = forward ? arc[(at + i) % k] : arc[(at + k - i % k) % k];
    arc = std::move(rot);
  } else if (arc.back() < arc.front()) {
    std::reverse(arc.begin(), arc.end());
  }
  const std::size_t len = arc.size() - 1;
  const std::size_t idx = len / 2;
  return make_edge(arc[idx], arc[idx + 1]);
}

}  // namespace detail

/// Pairwise forest distances between the edges of M, by truncated BFS in F
/// around each edge; pairs closer than k are returned.
inline std::vector<DistanceViolation> m_separation_violations(const Graph& forest,
                                                              const std::vector<Edge>& m_edges,
                                                              std::uint32_t k) {
  std::vector<DistanceViolation> out;
  if (m_edges.size() < 2 || k == 0) return out;
  const Vertex n = forest.vertex_count();
  std::vector<std::uint32_t> dist(n), stamp(n, 0);
  std::vector<Vertex> queue;
  std::uint32_t round = 0;
  for (std::size_t i = 0; i + 1 < m_edges.size(); ++i) {
    ++round;
    queue.clear();
    for (Vertex s : {m_edges[i].first, m_edges[i].second}) {
      stamp[s] = round;
      dist[s] = 0;
      queue.push_back(s);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi];
      if (dist[v] + 1 >= k) continue;
      for (Vertex w : forest.neighbors(v))
        if (stamp[w] != round) {
          stamp[w] = round;
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (std::size_t j = i + 1; j < m_edges.size(); ++j) {
      std::uint32_t d = kInfDist;
      for (Vertex v : {m_edges[j].first, m_edges[j].second})
        if (stamp[v] == round) d = std::min(d, dist[v]);
      if (d < k) out.push_back({m_edges[i], m_edges[j], d});
    }
  }
  return out;
}

/// Greedy cycle breaking with a final certification pass.
///
/// Working on the 2-core (which carries every cycle), repeatedly locate a
/// cycle; if, measured in the core's original degrees, it is longer than
/// long_threshold and carries a degree-2 arc of length >= 2k+1, remove that
/// arc's center edge (M1), otherwise remove the cycle's least edge (M2).
/// Once acyclic, F is everything not removed. The k-separation of M is then
/// certified; a violation yields StructureFailure rather than a bad output.
inline DecomposeResult decompose(const Graph& g, std::uint32_t k, std::uint32_t long_threshold) {
  if (k < 1) throw std::invalid_argument("decompose: k must be >= 1");
  const Graph core = two_core(g);
  std::unordered_set<std::uint64_t> removed;
  std::vector<Edge> m_edges;
  std::vector<MClass> m_tags;

  for (;;) {
    const auto cycle = detail::find_working_cycle(core, removed);
    if (cycle.empty()) break;
    bool took_center = false;
    if (cycle.size() > long_threshold) {
      const auto profile = cycle_degree_profile(core, cycle);
      if (profile.arc_length() >= 2 * static_cast<std::size_t>(k) + 1) {
        m_edges.push_back(detail::arc_center_edge(profile.longest_degree2_arc));
        m_tags.push_back(MClass::kLongCycleCenter);
        took_center = true;
      }
    }
    if (!took_center) {
      Edge least = make_edge(cycle[0], cycle[1]);
      for (std::size_t i = 1; i < cycle.size(); ++i)
        least = std::min(least, make_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
      m_edges.push_back(least);
      m_tags.push_back(MClass::kShortCycleBreak);
    }
    removed.insert(detail::edge_key(m_edges.back()));
  }

  std::vector<Edge> forest_edges;
  forest_edges.reserve(g.edge_count() - m_edges.size());
  for (const auto& e : g.edges())
    if (!removed.count(detail::edge_key(e))) forest_edges.push_back(e);
  Decomposition d{Graph::from_edges(g.vertex_count(), std::move(forest_edges)),
                  std::move(m_edges), std::move(m_tags), k};

  auto violations = m_separation_violations(d.forest, d.m_edges, k);
  if (!violations.empty()) {
    StructureFailure f;
    f.stage = "decompose";
    f.detail = std::to_string(violations.size()) +
               " M-edge pair(s) closer than k=" + std::to_string(k) + " in F";
    f.violations = std::move(violations);
    return f;
  }
  return d;
}

inline DecomposeResult decompose(const Graph& g, std::uint32_t k) {
  return decompose(g, k, default_long_cycle_threshold(g.vertex_count()));
}

struct DecompositionReport {
  bool forest_acyclic = false;
  std::vector<Vertex> forest_cycle;  // witness when not acyclic
  bool partition_exact = false;      // F and M disjoint, union = E(g)
  std::string partition_detail;
  bool separation_ok = false;
  std::vector<DistanceViolation> separation_violations;

  bool all_ok() const { return forest_acyclic && partition_exact && separation_ok; }
};

/// Independent re-check of all three decomposition invariants, with witnesses.
/// Distances are recomputed by full BFS per M-edge endpoint, not by the
/// truncated sweep the constructor uses.
inline DecompositionReport verify_decomposition(const Graph& g, const Decomposition& d) {
  DecompositionReport report;

  auto fc = is_forest(d.forest);
  report.forest_acyclic = fc.acyclic;
  report.forest_cycle = std::move(fc.cycle);

  std::vector<Edge> combined = d.forest.edges();
  combined.insert(combined.end(), d.m_edges.begin(), d.m_edges.end());
  std::sort(combined.begin(), combined.end());
  if (std::adjacent_find(combined.begin(), combined.end()) != combined.end()) {
    report.partition_detail = "F and M overlap";
  } else if (combined != g.edges()) {
    report.partition_detail = "F u M differs from E(g)";
  } else {
    report.partition_exact = true;
  }

  report.separation_ok = true;
  for (std::size_t i = 0; i + 1 < d.m_edges.size(); ++i) {
    const auto da = bfs_distances(d.forest, d.m_edges[i].first);
    const auto db = bfs_distances(d.forest, d.m_edges[i].second);
    for (std::size_t j = i + 1; j < d.m_edges.size(); ++j) {
      std::uint32_t dist = kInfDist;
      for (Vertex v : {d.m_edges[j].first, d.m_edges[j].second}) {
        dist = std::min(dist, da[v]);
        dist = std::min(dist, db[v]);
      }
      if (dist < d.k) {
        report.separation_ok = false;
        report.separation_violations.push_back({d.m_edges[i], d.m_edges[j], dist});
      }
    }
  }
  return report;
}

}  // namespace oddhom

#endif  // ODDHOM_DECOMPOSITION_HPP
