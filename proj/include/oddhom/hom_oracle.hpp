#ifndef ODDHOM_HOM_ORACLE_HPP
#define ODDHOM_HOM_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oddhom/graph.hpp"
#include "oddhom/graph_core.hpp"

namespace oddhom {

/// Circular clique C_{p,q}: vertices 0..p-1, u ~ v iff the difference
/// (u - v) mod p lies in [q, p-q]. Edgeless when p < 2q; C_{2l+1,l} is the
/// odd cycle on 2l+1 vertices and C_{p,1} is the complete graph K_p.
inline Graph circulant(std::uint32_t p, std::uint32_t q) {
  if (q == 0) throw std::invalid_argument("circulant: q must be >= 1");
  if (p == 0) throw std::invalid_argument("circulant: p must be >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < p; ++u)
    for (Vertex v = u + 1; v < p; ++v) {
      const std::uint32_t d = v - u;
      if (d >= q && d <= p - q) edges.emplace_back(u, v);
    }
  return Graph::from_edges(p, std::move(edges));
}

inline bool is_bipartite(const Graph& g) {
  const Vertex n = g.vertex_count();
  std::vector<std::int8_t> color(n, -1);
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi];
      for (Vertex w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = color[v] ^ 1;
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

struct HomMapping {
  std::vector<Vertex> mapping;  // vertex of G -> vertex of H
};

inline bool is_homomorphism(const Graph& g, const Graph& h, const HomMapping& m) {
  if (m.mapping.size() != g.vertex_count()) return false;
  for (const auto& [u, v] : g.edges())
    if (!h.has_edge(m.mapping[u], m.mapping[v])) return false;
  return true;
}

struct HomSearchResult {
  enum class Status { kFound, kNone, kBudgetExceeded };
  Status status = Status::kNone;
  HomMapping mapping;            // populated when status == kFound
  std::uint64_t nodes = 0;       // assignments attempted

  bool found() const { return status == Status::kFound; }
  bool exhausted() const { return status == Status::kNone; }
};

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

/// Complete backtracking search for a homomorphism g -> h. Variables are
/// g-vertices in BFS order from a maximum-degree vertex of each component;
/// values are tried ascending; forward checking intersects the candidate set
/// of every unassigned neighbor with the h-neighborhood of the chosen image.
/// "kNone" is exhaustive; running out of budget is reported explicitly.
inline HomSearchResult hom_search(const Graph& g, const Graph& h,
                                  std::uint64_t budget = kDefaultSearchBudget) {
  HomSearchResult result;
  const Vertex n = g.vertex_count();
  const Vertex nh = h.vertex_count();
  if (n == 0) {
    result.status = HomSearchResult::Status::kFound;
    return result;
  }
  if (nh == 0) return result;  // nowhere to map

  if (is_bipartite(h) && !is_bipartite(g)) return result;  // parity obstruction

  // Variable order: BFS from a max-degree vertex per component.
  std::vector<Vertex> order;
  order.reserve(n);
  {
    std::vector<char> seen(n, 0);
    for (;;) {
      Vertex root = kInfDist;
      for (Vertex v = 0; v < n; ++v)
        if (!seen[v] && (root == kInfDist || g.degree(v) > g.degree(root))) root = v;
      if (root == kInfDist) break;
      seen[root] = 1;
      const std::size_t start = order.size();
      order.push_back(root);
      for (std::size_t qi = start; qi < order.size(); ++qi)
        for (Vertex w : g.neighbors(order[qi]))
          if (!seen[w]) {
            seen[w] = 1;
            order.push_back(w);
          }
    }
  }

  const std::size_t words = (nh + 63) / 64;
  std::vector<std::uint64_t> full(words, 0);
  for (Vertex a = 0; a < nh; ++a) full[a / 64] |= std::uint64_t{1} << (a % 64);
  std::vector<std::uint64_t> nbmask(static_cast<std::size_t>(nh) * words, 0);
  for (Vertex a = 0; a < nh; ++a)
    for (Vertex b : h.neighbors(a)) nbmask[a * words + b / 64] |= std::uint64_t{1} << (b % 64);

  std::vector<std::uint64_t> cand(static_cast<std::size_t>(n) * words);
  for (Vertex v = 0; v < n; ++v)
    std::copy(full.begin(), full.end(), cand.begin() + v * words);

  std::vector<Vertex> image(n, kInfDist);
  std::vector<char> assigned(n, 0);
  // Undo trail: (vertex, saved words) entries, with per-level marks.
  std::vector<Vertex> trail_vertex;
  std::vector<std::uint64_t> trail_words;
  std::vector<std::size_t> level_mark(n + 1, 0);
  std::vector<std::uint32_t> level_start(n, 0);  // next value to try per level

  auto next_value = [&](Vertex v, std::uint32_t from) -> std::uint32_t {
    for (std::uint32_t a = from; a < nh; ++a)
      if (cand[v * words + a / 64] >> (a % 64) & 1) return a;
    return kInfDist;
  };
  auto undo_to = [&](std::size_t mark) {
    while (trail_vertex.size() > mark) {
      const Vertex w = trail_vertex.back();
      trail_vertex.pop_back();
      for (std::size_t k = words; k-- > 0;) {
        cand[w * words + k] = trail_words.back();
        trail_words.pop_back();
      }
    }
  };

  std::size_t depth = 0;
  level_start[0] = 0;
  for (;;) {
    if (depth == n) {
      result.status = HomSearchResult::Status::kFound;
      result.mapping.mapping.assign(image.begin(), image.end());
      return result;
    }
    const Vertex v = order[depth];
    const std::uint32_t a = next_value(v, level_start[depth]);
    if (a == kInfDist) {
      if (depth == 0) return result;  // exhausted: no homomorphism
      --depth;
      const Vertex pv = order[depth];
      assigned[pv] = 0;
      undo_to(level_mark[depth]);
      level_start[depth] = image[pv] + 1;
      continue;
    }
    if (++result.nodes > budget) {
      result.status = HomSearchResult::Status::kBudgetExceeded;
      return result;
    }
    image[v] = a;
    assigned[v] = 1;
    level_mark[depth] = trail_vertex.size();
    bool dead = false;
    for (Vertex w : g.neighbors(v)) {
      if (assigned[w]) continue;
      trail_vertex.push_back(w);
      bool empty = true;
      for (std::size_t k = 0; k < words; ++k) {
        trail_words.push_back(cand[w * words + k]);
        cand[w * words + k] &= nbmask[a * words + k];
        if (cand[w * words + k]) empty = false;
      }
      if (empty) {
        dead = true;
        break;
      }
    }
    if (dead) {
      assigned[v] = 0;
      undo_to(level_mark[depth]);
      level_start[depth] = a + 1;
      continue;
    }
    ++depth;
    if (depth < n) level_start[depth] = 0;
  }
}

struct CircularChromatic {
  std::uint32_t p = 0, q = 0;  // coprime, value p/q
  double value() const { return static_cast<double>(p) / q; }
  bool operator==(const CircularChromatic&) const = default;
};

/// Exact circular chromatic number when decidable within budget: the least
/// ratio p/q (coprime, 2q <= p <= p_max) whose circulant admits g, scanned in
/// increasing ratio order. An undecided probe stops the scan (the frontier
/// pair is reported) since later successes could not prove minimality.
struct ChiCResult {
  std::optional<CircularChromatic> exact;
  std::optional<CircularChromatic> undecided;  // budget ran out at this pair
  std::uint64_t nodes = 0;

  bool decided() const { return exact.has_value(); }
};

inline ChiCResult circular_chromatic(const Graph& g, std::uint32_t p_max = 0,
                                     std::uint64_t budget = kDefaultSearchBudget) {
  if (g.edge_count() == 0)
    throw std::invalid_argument("circular_chromatic: graph needs at least one edge");
  if (p_max == 0) p_max = g.vertex_count();
  std::vector<CircularChromatic> ratios;
  for (std::uint32_t p = 2; p <= p_max; ++p)
    for (std::uint32_t q = 1; 2 * q <= p; ++q)
      if (std::gcd(p, q) == 1) ratios.push_back({p, q});
  std::sort(ratios.begin(), ratios.end(), [](const auto& a, const auto& b) {
    return static_cast<std::uint64_t>(a.p) * b.q < static_cast<std::uint64_t>(b.p) * a.q;
  });
  ChiCResult out;
  for (const auto& r : ratios) {
    const auto sr = hom_search(g, circulant(r.p, r.q), budget);
    out.nodes += sr.nodes;
    if (sr.found()) {
      out.exact = r;
      return out;
    }
    if (sr.status == HomSearchResult::Status::kBudgetExceeded) {
      out.undecided = r;
      return out;
    }
  }
  return out;  // nothing admitted g up to p_max
}

/// Existence of a homomorphism to the odd cycle C_{2l+1} for l = 1..ell_max.
/// The existence set must be downward closed: a map to a longer odd cycle
/// composes with the wind-down maps to every shorter one.
struct MonotonicityReport {
  std::vector<std::int8_t> exists;  // index l-1; 1 yes, 0 no, -1 undecided
  bool downward_closed = true;
  bool all_decided = true;
};

inline MonotonicityReport monotonicity_check(const Graph& g, std::uint32_t ell_max,
                                             std::uint64_t budget = kDefaultSearchBudget) {
  MonotonicityReport report;
  report.exists.resize(ell_max);
  for (std::uint32_t ell = 1; ell <= ell_max; ++ell) {
    const auto sr = hom_search(g, circulant(2 * ell + 1, ell), budget);
    if (sr.status == HomSearchResult::Status::kBudgetExceeded) {
      report.exists[ell - 1] = -1;
      report.all_decided = false;
    } else {
      report.exists[ell - 1] = sr.found() ? 1 : 0;
    }
  }
  bool seen_no = false;
  for (std::uint32_t i = 0; i < ell_max; ++i) {
    if (report.exists[i] == 0) seen_no = true;
    if (report.exists[i] == 1 && seen_no) report.downward_closed = false;
  }
  return report;
}

}  // namespace oddhom

#endif  // ODDHOM_HOM_ORACLE_HPP
