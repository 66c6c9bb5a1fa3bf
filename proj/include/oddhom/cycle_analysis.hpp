#ifndef ODDHOM_CYCLE_ANALYSIS_HPP
#define ODDHOM_CYCLE_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oddhom/graph.hpp"
#include "oddhom/graph_core.hpp"

namespace oddhom {

struct OddGirthResult {
  std::optional<std::uint32_t> length;  // odd, >= 3; empty iff bipartite
  std::vector<Vertex> cycle;            // witness realizing length
};

/// True iff `cycle` is a simple cycle of g (distinct vertices, consecutive
/// pairs and the closing pair all edges).
inline bool is_cycle_of(const Graph& g, const std::vector<Vertex>& cycle) {
  if (cycle.size() < 3) return false;
  std::vector<Vertex> sorted(cycle);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

namespace detail {

// Scratch for repeated BFS sweeps without per-root O(n) clears.
struct BfsScratch {
  std::vector<std::uint32_t> level;
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> stamp;
  std::vector<Vertex> queue;
  std::uint32_t round = 0;

  explicit BfsScratch(std::size_t n) : level(n), parent(n), stamp(n, 0) {}
  void begin() {
    ++round;
    queue.clear();
  }
  bool seen(Vertex v) const { return stamp[v] == round; }
  void visit(Vertex v, std::uint32_t lev, Vertex par) {
    stamp[v] = round;
    level[v] = lev;
    parent[v] = par;
    queue.push_back(v);
  }
};

// Cycle through non-tree edge (u,v): root paths of u and v spliced at their
// first common vertex. Both endpoints lie in the current BFS tree.
inline std::vector<Vertex> splice_cycle(const BfsScratch& bfs, Vertex u, Vertex v) {
  std::vector<Vertex> pu;
  for (Vertex a = u;; a = bfs.parent[a]) {
    pu.push_back(a);
    if (bfs.parent[a] == a) break;
  }
  std::vector<Vertex> pv;
  Vertex meet = v;
  for (;; meet = bfs.parent[meet]) {
    if (std::find(pu.begin(), pu.end(), meet) != pu.end()) break;
    pv.push_back(meet);
  }
  std::vector<Vertex> cycle;
  for (Vertex a : pu) {
    cycle.push_back(a);
    if (a == meet) break;
  }
  for (auto it = pv.rbegin(); it != pv.rend(); ++it) cycle.push_back(*it);
  return cycle;
}

}  // namespace detail

/// Minimum odd cycle length with a verified witness, or none iff bipartite.
/// BFS from every vertex (of the 2-core, where all cycles live) detecting
/// same-level edges; an edge inside level d closes an odd walk of length
/// 2d+1, and the minimum over all roots is the odd girth. Sweeps are capped
/// at the level that could still improve the current best.
inline OddGirthResult odd_girth(const Graph& g) {
  const Graph core = two_core(g);
  const Vertex n = core.vertex_count();
  detail::BfsScratch bfs(n);
  std::uint32_t best = kInfDist;
  std::vector<Vertex> witness;

  for (Vertex root = 0; root < n; ++root) {
    if (core.degree(root) < 2) continue;
    bfs.begin();
    bfs.visit(root, 0, root);
    for (std::size_t qi = 0; qi < bfs.queue.size(); ++qi) {
      const Vertex v = bfs.queue[qi];
      const std::uint32_t d = bfs.level[v];
      if (best != kInfDist && d > (best - 3) / 2) break;
      for (Vertex w : core.neighbors(v)) {
        if (!bfs.seen(w)) {
          bfs.visit(w, d + 1, v);
        } else if (bfs.level[w] == d && w != v) {
          auto cycle = detail::splice_cycle(bfs, v, w);
          if (cycle.size() < best) {
            best = static_cast<std::uint32_t>(cycle.size());
            witness = std::move(cycle);
          }
        }
      }
    }
  }
  if (best == kInfDist) return {std::nullopt, {}};
  if (best % 2 == 0 || !is_cycle_of(g, witness))
    throw std::logic_error("odd_girth: witness failed verification");
  return {best, std::move(witness)};
}

/// Minimum cycle length, or none for forests. Same BFS scheme as odd_girth
/// but every non-tree edge (u,v) contributes level(u)+level(v)+1.
inline std::optional<std::uint32_t> girth(const Graph& g) {
  const Graph core = two_core(g);
  const Vertex n = core.vertex_count();
  detail::BfsScratch bfs(n);
  std::uint32_t best = kInfDist;

  for (Vertex root = 0; root < n; ++root) {
    if (core.degree(root) < 2) continue;
    bfs.begin();
    bfs.visit(root, 0, root);
    for (std::size_t qi = 0; qi < bfs.queue.size(); ++qi) {
      const Vertex v = bfs.queue[qi];
      const std::uint32_t d = bfs.level[v];
      if (best != kInfDist && 2 * d >= best) break;
      for (Vertex w : core.neighbors(v)) {
        if (!bfs.seen(w))
          bfs.visit(w, d + 1, v);
        else if (w != bfs.parent[v])
          best = std::min(best, d + bfs.level[w] + 1);
      }
    }
  }
  if (best == kInfDist) return std::nullopt;
  return best;
}

/// All simple cycles of length < max_length, each exactly once up to
/// rotation/reflection, in canonical form: least vertex first, then the
/// smaller of the two orientations. Enumerated by per-vertex truncated DFS
/// over larger-indexed vertices; max_length > 64 is refused.
inline std::vector<std::vector<Vertex>> short_cycles(const Graph& g, std::uint32_t max_length) {
  if (max_length > 64)
    throw std::invalid_argument("short_cycles: max_length > 64 refused (combinatorial blowup)");
  std::vector<std::vector<Vertex>> found;
  if (max_length < 4) return found;  // shortest cycle has length 3
  const Vertex n = g.vertex_count();
  std::vector<char> in_path(n, 0);
  std::vector<Vertex> path;

  struct Frame {
    Vertex v;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    in_path[s] = 1;
    stack.assign(1, {s});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        const Vertex w = nb[f.next++];
        if (w <= s || in_path[w]) continue;
        path.push_back(w);
        in_path[w] = 1;
        const std::size_t k = path.size() - 1;  // edges on path
        if (k >= 2 && path[1] < path.back() && g.has_edge(w, s)) found.push_back(path);
        if (k + 2 < max_length)
          stack.push_back({w});
        else {
          in_path[w] = 0;
          path.pop_back();
        }
      } else {
        in_path[f.v] = 0;
        if (path.size() > 1) path.pop_back();
        stack.pop_back();
      }
    }
    in_path[s] = 0;
  }
  return found;
}

struct ProximityViolation {
  std::vector<Vertex> cycle_a, cycle_b;
  std::uint32_t dist = 0;  // min over vertex pairs of whole-graph BFS distance
};

/// Pairs of distinct cycles of length < max_length at mutual distance
/// < min_dist (intersecting pairs count as distance 0). An empty result
/// certifies the short-cycle separation property at these thresholds.
inline std::vector<ProximityViolation> audit_short_cycle_proximity(const Graph& g,
                                                                   std::uint32_t max_length,
                                                                   std::uint32_t min_dist) {
  std::vector<ProximityViolation> violations;
  if (min_dist == 0) return violations;
  const auto cycles = short_cycles(g, max_length);
  if (cycles.size() < 2) return violations;

  const Vertex n = g.vertex_count();
  std::vector<std::uint32_t> dist(n), stamp(n, 0);
  std::vector<Vertex> queue;
  std::uint32_t round = 0;

  for (std::size_t i = 0; i + 1 < cycles.size(); ++i) {
    ++round;
    queue.clear();
    for (Vertex v : cycles[i]) {
      stamp[v] = round;
      dist[v] = 0;
      queue.push_back(v);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi];
      if (dist[v] + 1 >= min_dist) continue;
      for (Vertex w : g.neighbors(v)) {
        if (stamp[w] != round) {
          stamp[w] = round;
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::uint32_t d = kInfDist;
      for (Vertex v : cycles[j])
        if (stamp[v] == round) d = std::min(d, dist[v]);
      if (d < min_dist) violations.push_back({cycles[i], cycles[j], d});
    }
  }
  return violations;
}

struct CycleDegreeProfile {
  std::size_t high_degree_count = 0;  // cycle vertices with core degree >= 3
  // Longest arc of the cycle whose interior vertices all have core degree 2,
  // as a vertex path; front() == back() when the arc wraps the whole cycle.
  std::vector<Vertex> longest_degree2_arc;

  std::size_t arc_length() const {
    return longest_degree2_arc.empty() ? 0 : longest_degree2_arc.size() - 1;
  }
};

inline CycleDegreeProfile cycle_degree_profile(const Graph& core, const std::vector<Vertex>& cycle) {
  if (!is_cycle_of(core, cycle))
    throw std::invalid_argument("cycle_degree_profile: input is not a cycle of the graph");
  const std::size_t k = cycle.size();
  CycleDegreeProfile out;
  std::vector<std::size_t> high_pos;
  for (std::size_t i = 0; i < k; ++i)
    if (core.degree(cycle[i]) >= 3) high_pos.push_back(i);
  out.high_degree_count = high_pos.size();

  auto arc_from = [&](std::size_t start, std::size_t len) {
    std::vector<Vertex> arc;
    arc.reserve(len + 1);
    for (std::size_t s = 0; s <= len; ++s) arc.push_back(cycle[(start + s) % k]);
    return arc;
  };

  if (high_pos.empty()) {
    out.longest_degree2_arc = arc_from(0, k);  // whole cycle, closed
    return out;
  }
  std::size_t best_len = 0, best_start = high_pos[0];
  for (std::size_t t = 0; t < high_pos.size(); ++t) {
    const std::size_t a = high_pos[t];
    const std::size_t b = high_pos[(t + 1) % high_pos.size()];
    const std::size_t len = (b + k - a) % k == 0 ? k : (b + k - a) % k;
    if (len > best_len) {
      best_len = len;
      best_start = a;
    }
  }
  out.longest_degree2_arc = arc_from(best_start, best_len);
  return out;
}

}  // namespace oddhom

#endif  // ODDHOM_CYCLE_ANALYSIS_HPP
