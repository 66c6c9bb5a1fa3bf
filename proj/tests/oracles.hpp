#ifndef ODDHOM_TESTS_ORACLES_HPP
#define ODDHOM_TESTS_ORACLES_HPP

// Independent reference computations for the test suite. These deliberately
// take different routes than the library (subset/permutation enumeration,
// product-domain arithmetic, plain bisection) so agreement is evidence, not
// tautology.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <optional>
#include <vector>

#include "oddhom/graph.hpp"

namespace oddhom::test {

/// Every simple cycle of g in canonical form (least vertex first, lesser
/// orientation), by enumerating vertex subsets and cyclic orderings.
/// Exponential; fine up to ~8 vertices.
inline std::vector<std::vector<Vertex>> brute_force_cycles(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n > 12) throw std::invalid_argument("brute_force_cycles: oracle is exponential, n > 12");
  std::vector<std::vector<Vertex>> cycles;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) subset.push_back(v);
    if (subset.size() < 3) continue;
    // Orderings fixing subset[0] first; reflection deduped by second < last.
    std::vector<Vertex> rest(subset.begin() + 1, subset.end());
    std::sort(rest.begin(), rest.end());
    do {
      if (rest.front() > rest.back()) continue;
      std::vector<Vertex> cycle{subset[0]};
      cycle.insert(cycle.end(), rest.begin(), rest.end());
      bool ok = true;
      for (std::size_t i = 0; i < cycle.size() && ok; ++i)
        ok = g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      if (ok) cycles.push_back(cycle);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return cycles;
}

inline std::optional<std::uint32_t> brute_force_girth(const Graph& g, bool odd_only) {
  std::uint32_t best = 0xFFFFFFFF;
  for (const auto& cycle : brute_force_cycles(g))
    if (!odd_only || cycle.size() % 2 == 1)
      best = std::min<std::uint32_t>(best, static_cast<std::uint32_t>(cycle.size()));
  if (best == 0xFFFFFFFF) return std::nullopt;
  return best;
}

/// Proper k-colorability by exhaustive assignment (k^n; n <= 10 or so).
inline bool brute_force_colorable(const Graph& g, std::uint32_t k) {
  const Vertex n = g.vertex_count();
  std::vector<std::uint32_t> color(n, 0);
  for (;;) {
    bool proper = true;
    for (const auto& [u, v] : g.edges())
      if (color[u] == color[v]) {
        proper = false;
        break;
      }
    if (proper) return true;
    Vertex i = 0;
    while (i < n && ++color[i] == k) color[i++] = 0;
    if (i == n) return false;
  }
}

inline std::uint32_t brute_force_chromatic(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  if (g.edge_count() == 0) return 1;
  for (std::uint32_t k = 2;; ++k)
    if (brute_force_colorable(g, k)) return k;
}

inline double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const bool rising = f(lo) < 0;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool below = f(mid) < 0;
    (below == rising ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Product-domain evaluation of the five-class partition rate, written
/// directly off the closed form with pow/exp (no log accumulation).
inline double b_reference_product(double c, const std::array<double, 4>& a) {
  const double a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3];
  const double a4 = 1 - a0 - a1 - a2 - a3;
  double val = 1.0 / (std::pow(a0, a0) * std::pow(a1, a1) * std::pow(a2, a2) * std::pow(a3, a3) *
                      std::pow(a4, a4));
  val *= std::exp(c * (a0 * a4 - 0.5));
  val *= std::pow(std::exp(c * a0) - 1, a1);
  val *= std::pow(std::exp(c * a1) - 1, a2);
  val *= std::pow(std::exp(c * a2) - 1, a3);
  val *= std::pow(std::exp(c * a3) - 1, a4);
  val *= std::pow(1 - std::exp(-a3 / a2) * std::exp(-c * a3), a2);
  return val;
}

struct ReferenceGridResult {
  double max_val = 0;
  std::array<double, 4> argmax{};
  std::uint64_t points = 0;
};

/// Product-domain sweep with the same loop structure and hoisting as the
/// published grid program (a3 outer .. a0 inner, float step accumulation).
inline ReferenceGridResult reference_grid(double c, double delta, double min_class = 0.06,
                                          double max_ind_set = 0.6) {
  ReferenceGridResult r;
  for (double a3 = min_class; a3 + 4 * min_class < 1; a3 += delta) {
    const double B = std::exp(c * a3) - 1;
    for (double a2 = min_class; a3 + a2 + 3 * min_class < 1; a2 += delta) {
      const double A23 = 1 / (std::pow(a2, a2) * std::pow(a3, a3)) * std::exp(-c / 2) *
                         std::pow(std::exp(c * a2) - 1, a3) *
                         std::pow(1 - std::exp(-a3 / a2) * std::exp(-c * a3), a2);
      for (double a1 = min_class; a3 + a1 < max_ind_set && a3 + a2 + a1 + 2 * min_class < 1;
           a1 += delta) {
        const double A = A23 / std::pow(a1, a1) * std::pow(std::exp(c * a1) - 1, a2);
        for (double a0 = std::max(std::max(min_class, (1 - max_ind_set) - a2 - a3),
                                  (1 - max_ind_set) - a1 - a3);
             a2 + a0 < max_ind_set && a3 + a0 < max_ind_set &&
             a3 + a2 + a1 + a0 + min_class < 1;
             a0 += delta) {
          const double a4 = 1 - a0 - a1 - a2 - a3;
          const double C = std::exp(c * a0);
          const double val = 1 / std::pow(a0, a0) * A * std::pow(B * C / a4, a4) * std::pow(C - 1, a1);
          ++r.points;
          if (val > r.max_val) {
            r.max_val = val;
            r.argmax = {a0, a1, a2, a3};
          }
        }
      }
    }
  }
  return r;
}

}  // namespace oddhom::test

#endif  // ODDHOM_TESTS_ORACLES_HPP
