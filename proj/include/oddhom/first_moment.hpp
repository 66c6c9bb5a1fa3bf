#ifndef ODDHOM_FIRST_MOMENT_HPP
#define ODDHOM_FIRST_MOMENT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace oddhom {

/// Per-vertex exponential rate b of the expected number of valid five-class
/// partitions at density c and class fractions (a0..a3, a4 = 1 - sum):
///
///   log b = -sum_i a_i log a_i + c (a0 a4 - 1/2)
///           + a1 log(e^{c a0}-1) + a2 log(e^{c a1}-1)
///           + a3 log(e^{c a2}-1) + a4 log(e^{c a3}-1)
///           + a2 log(1 - e^{-a3/a2} e^{-c a3})
///
/// sup b < 1 over the feasible region rules out such partitions entirely.
struct BoundPoint {
  double c = 0;
  std::array<double, 4> alpha{};
  double alpha4 = 0;
  double log_b = 0;

  double b() const { return std::exp(log_b); }
};

namespace detail {

inline void check_interior(double c, const std::array<double, 4>& a, double a4) {
  if (!(c > 0)) throw std::invalid_argument("b: requires c > 0");
  for (double x : a)
    if (!(x > 0)) throw std::invalid_argument("b: class fraction on or outside the boundary");
  if (!(a4 > 0)) throw std::invalid_argument("b: fractions sum to >= 1");
}

}  // namespace detail

inline BoundPoint b_value(double c, const std::array<double, 4>& alpha) {
  const double a0 = alpha[0], a1 = alpha[1], a2 = alpha[2], a3 = alpha[3];
  const double a4 = 1.0 - a0 - a1 - a2 - a3;
  detail::check_interior(c, alpha, a4);
  double s = -(a0 * std::log(a0) + a1 * std::log(a1) + a2 * std::log(a2) + a3 * std::log(a3) +
               a4 * std::log(a4));
  s += c * (a0 * a4 - 0.5);
  s += a1 * std::log(std::expm1(c * a0));
  s += a2 * std::log(std::expm1(c * a1));
  s += a3 * std::log(std::expm1(c * a2));
  s += a4 * std::log(std::expm1(c * a3));
  s += a2 * std::log1p(-std::exp(-a3 / a2 - c * a3));
  return {c, alpha, a4, s};
}

/// Analytic gradient of log b in the four free fractions. Matches central
/// finite differences on the interior; each component stays below 30 in
/// absolute value on the default region at c = 4, which is what the grid
/// certificate leans on.
inline std::array<double, 4> b_log_gradient(double c, const std::array<double, 4>& alpha) {
  const double a0 = alpha[0], a1 = alpha[1], a2 = alpha[2], a3 = alpha[3];
  const double a4 = 1.0 - a0 - a1 - a2 - a3;
  detail::check_interior(c, alpha, a4);
  const double e0 = std::expm1(c * a0);
  const double e1 = std::expm1(c * a1);
  const double e2 = std::expm1(c * a2);
  const double e3 = std::expm1(c * a3);
  const double t = a3 / a2 + c * a3;
  const double et = std::expm1(t);

  std::array<double, 4> g;
  g[0] = c * (-a0 + a1 + a1 / e0 + a4) - std::log(a0) + std::log(a4) - std::log(e3);
  g[1] = c * (-a0 + a2 + a2 / e1) - std::log(a1) + std::log(a4) + std::log(e0 / e3);
  g[2] = c * (-a0 + a3 + a3 / e2) - (a3 / a2) / et + std::log(a4) - std::log(a2) +
         std::log(e1 / e3) + std::log1p(-std::exp(-t));
  g[3] = c * (-a0 + a4 * (e3 + 1.0) / e3) + (1.0 + c * a2) / (std::exp(a3 / a2) * (e3 + 1.0) - 1.0) +
         std::log(a4) - std::log(a3) + std::log(e2 / e3);
  return g;
}

/// Feasible region of the sweep: every class fraction at least min_class,
/// and each of the five unions a_i + a_{i+2} (an independent set under a
/// valid partition) at most max_ind_set.
struct Region {
  double min_class = 0.06;
  double max_ind_set = 0.6;
};

struct GridPoint {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  double log_b = 0;
};

namespace detail {

struct GridOuter {
  double a3 = 0, a2 = 0;
  double log_e3 = 0;    // log(e^{c a3} - 1)
  double hoist23 = 0;   // a2/a3 entropy, e^{-c/2}, (e^{c a2}-1)^{a3}, pairing term
};

inline std::vector<GridOuter> grid_outer_pairs(double c, double delta, const Region& r) {
  std::vector<GridOuter> out;
  for (double a3 = r.min_class; a3 + 4 * r.min_class < 1; a3 += delta) {
    const double log_e3 = std::log(std::expm1(c * a3));
    for (double a2 = r.min_class; a3 + a2 + 3 * r.min_class < 1; a2 += delta) {
      const double hoist23 = -a2 * std::log(a2) - a3 * std::log(a3) - c / 2 +
                             a3 * std::log(std::expm1(c * a2)) +
                             a2 * std::log1p(-std::exp(-a3 / a2 - c * a3));
      out.push_back({a3, a2, log_e3, hoist23});
    }
  }
  return out;
}

// Inner two loops for one (a3, a2) pair, in the canonical traversal order
// (a1 then a0, both ascending from the region bounds in steps of delta).
// Every evaluated point is handed to fn; log_b here is algebraically the
// same expression as b_value, just accumulated from the hoisted parts.
template <class Fn>
inline void grid_sweep_pair(double c, double delta, const Region& r, const GridOuter& o, Fn&& fn) {
  const double a3 = o.a3, a2 = o.a2;
  const double floor0 = 1.0 - r.max_ind_set;
  for (double a1 = r.min_class; a3 + a1 < r.max_ind_set && a3 + a2 + a1 + 2 * r.min_class < 1;
       a1 += delta) {
    const double hoist1 = o.hoist23 - a1 * std::log(a1) + a2 * std::log(std::expm1(c * a1));
    const double a0_start = std::max({r.min_class, floor0 - a2 - a3, floor0 - a1 - a3});
    for (double a0 = a0_start; a2 + a0 < r.max_ind_set && a3 + a0 < r.max_ind_set &&
                               a3 + a2 + a1 + a0 + r.min_class < 1;
         a0 += delta) {
      const double a4 = 1.0 - a0 - a1 - a2 - a3;
      const double log_b = hoist1 - a0 * std::log(a0) +
                           a4 * (o.log_e3 + c * a0 - std::log(a4)) +
                           a1 * std::log(std::expm1(c * a0));
      fn(GridPoint{a0, a1, a2, a3, log_b});
    }
  }
}

struct ChunkBest {
  double log_b = -std::numeric_limits<double>::infinity();
  GridPoint at{};
  std::uint64_t points = 0;

  void offer(const GridPoint& p) {
    ++points;
    if (p.log_b > log_b ||
        (p.log_b == log_b && std::array{p.a0, p.a1, p.a2, p.a3} <
                                 std::array{at.a0, at.a1, at.a2, at.a3})) {
      log_b = p.log_b;
      at = p;
    }
  }
};

}  // namespace detail

/// Run fn over every grid point of the canonical sweep, serially.
template <class Fn>
inline std::uint64_t for_each_grid_point(double c, double delta, const Region& r, Fn&& fn) {
  std::uint64_t points = 0;
  for (const auto& o : detail::grid_outer_pairs(c, delta, r))
    detail::grid_sweep_pair(c, delta, r, o, [&](const GridPoint& p) {
      ++points;
      fn(p);
    });
  return points;
}

struct GridReport {
  double c = 0;
  double delta = 0;
  double max_value = 0;                  // largest b over the grid
  std::array<double, 4> argmax{};
  std::uint64_t points_evaluated = 0;
  double certified_sup_bound = 0;        // max_value * exp(L * 4 * delta / 2)
  double lipschitz_bound = 30.0;         // per-coordinate cap on |d log b / d a_i|
  double cap_b = 1.0;                    // assumed cap B >= sup b for the linear certificate
};

/// Deterministic grid maximization of b(c, .) with step delta. The outer
/// (a3, a2) plane is split into contiguous chunks (parallelizable); each
/// chunk reduces to a local best and the global reduction breaks value ties
/// toward the lexicographically smallest point, so the result is
/// bit-identical for any thread count.
inline GridReport grid_search(double c, double delta, const Region& region = {},
                              unsigned threads = 0) {
  if (!(delta > 0)) throw std::invalid_argument("grid_search: delta must be > 0");
  const auto pairs = detail::grid_outer_pairs(c, delta, region);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max(1u, std::min<unsigned>(threads, pairs.empty() ? 1 : static_cast<unsigned>(pairs.size())));

  std::vector<detail::ChunkBest> best(threads);
  auto run_chunk = [&](unsigned t) {
    const std::size_t lo = pairs.size() * t / threads;
    const std::size_t hi = pairs.size() * (t + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i)
      detail::grid_sweep_pair(c, delta, region, pairs[i],
                              [&](const GridPoint& p) { best[t].offer(p); });
  };
  if (threads == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run_chunk, t);
    for (auto& th : pool) th.join();
  }
  detail::ChunkBest global;
  for (const auto& b : best) {
    global.points += b.points;
    if (b.points &&
        (b.log_b > global.log_b ||
         (b.log_b == global.log_b && std::array{b.at.a0, b.at.a1, b.at.a2, b.at.a3} <
                                         std::array{global.at.a0, global.at.a1, global.at.a2,
                                                    global.at.a3})))
      global.log_b = b.log_b, global.at = b.at;
  }
  GridReport report;
  report.c = c;
  report.delta = delta;
  report.points_evaluated = global.points;
  report.max_value = global.points ? std::exp(global.log_b) : 0.0;
  report.argmax = {global.at.a0, global.at.a1, global.at.a2, global.at.a3};
  report.certified_sup_bound =
      report.max_value * std::exp(report.lipschitz_bound * 4.0 * delta / 2.0);
  return report;
}

/// Linearized certificate: with per-coordinate slope at most L*B and four
/// coordinates each within delta/2 of a grid point, any sup >= rho would
/// force a grid value >= rho - epsilon with epsilon = 2*L*B*delta. So
/// grid max < rho - epsilon certifies sup b < rho. The multiplicative bound
/// sup <= max * exp(2*L*delta) needs no cap B and is reported alongside.
struct CertifiedBound {
  bool holds = false;
  double epsilon = 0;
  double required_delta = 0;  // step size at which this grid max would certify rho
  double multiplicative_sup = 0;
  bool vacuous = false;  // rho <= epsilon: certificate cannot hold at any max
};

inline CertifiedBound certify_bound(const GridReport& report, double rho) {
  CertifiedBound cert;
  cert.epsilon = 2.0 * report.lipschitz_bound * report.cap_b * report.delta;
  cert.vacuous = rho <= cert.epsilon;
  cert.holds = report.max_value < rho - cert.epsilon;
  cert.required_delta =
      (rho - report.max_value) / (2.0 * report.lipschitz_bound * report.cap_b);
  cert.multiplicative_sup = report.certified_sup_bound;
  return cert;
}

/// Per-vertex rate of the expected count of induced bipartite subgraphs on a
/// beta fraction of the vertices: 2^beta e^{-c beta^2/4} / (beta^beta
/// (1-beta)^{1-beta}); below 1 means whp no such subgraph.
inline double bipartite_bound(double c, double beta) {
  if (!(beta >= 0 && beta <= 1)) throw std::invalid_argument("bipartite_bound: beta outside [0,1]");
  auto xlx = [](double x) { return x <= 0 ? 0.0 : x * std::log(x); };
  return std::exp(beta * std::log(2.0) - c * beta * beta / 4 - xlx(beta) - xlx(1 - beta));
}

/// Largest root of bipartite_bound(c, .) = 1 in (0.5, 1), to 1e-9, found by
/// bracketing the rightmost sign change of the (unimodal) log-rate. Empty
/// when the rate never exceeds 1 there or stays above 1 up to beta = 1.
inline std::optional<double> bipartite_threshold(double c) {
  auto f = [&](double beta) { return std::log(bipartite_bound(c, beta)); };
  const double right = 1.0 - 1e-13;
  if (f(right) >= 0) return std::nullopt;  // rate still >= 1 approaching 1
  constexpr int kSamples = 8192;
  double lo = -1;
  for (int i = kSamples; i-- > 0;) {
    const double beta = 0.5 + (right - 0.5) * i / kSamples;
    if (f(beta) > 0) {
      lo = beta;
      break;
    }
  }
  if (lo < 0) return std::nullopt;  // no positive excursion: no crossing
  double hi = lo + (right - 0.5) / kSamples;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Shortest odd cycle length ruled out by the bipartite bound: a map to an
/// odd cycle of length L leaves an induced bipartite subgraph on (L-1)/L of
/// the vertices, so every odd L with (L-1)/L > beta* is excluded.
struct OddCycleExclusion {
  double beta_star = 0;
  std::uint64_t min_odd_length = 0;  // smallest odd L with (L-1)/L > beta*
  std::uint64_t ell = 0;             // (L-1)/2
};

inline std::uint64_t min_excluded_odd_length(double beta_star) {
  const double l0 = 1.0 / (1.0 - beta_star);
  std::uint64_t length = static_cast<std::uint64_t>(std::floor(l0)) + 1;  // smallest integer > l0
  if (length % 2 == 0) ++length;
  return length;
}

inline std::optional<OddCycleExclusion> ell_c_bound(double c) {
  const auto beta = bipartite_threshold(c);
  if (!beta) return std::nullopt;
  const std::uint64_t length = min_excluded_odd_length(*beta);
  return OddCycleExclusion{*beta, length, (length - 1) / 2};
}

/// Exponential rate of 2^n (1-p)^{C(s,2)} with s = s_frac * n: negative
/// means whp no independent set of that size.
inline double independent_set_rate(double c, double s_frac) {
  if (!(s_frac > 0 && s_frac <= 1))
    throw std::invalid_argument("independent_set_rate: s_frac outside (0,1]");
  return std::log(2.0) - c * s_frac * s_frac / 2.0;
}

/// Exact finite-n log-probabilities of the partition properties for class
/// sizes n0..n4 (adjacency between consecutive classes only; every class-i
/// vertex with a back-neighbor; every class-2 vertex with a class-3
/// neighbor, as an upper bound). Zero class sizes push the P3/P4 factors to
/// probability zero, i.e. a -inf log term.
struct PartitionLogTerms {
  std::int64_t s_pairs = 0;  // C(n,2) - sum n_i n_{i+1}
  double log_p12 = 0;
  double log_p3 = 0;
  double log_p4_upper = 0;
};

inline PartitionLogTerms partition_probability_terms(double c, std::uint64_t n,
                                                     const std::array<std::uint64_t, 5>& sizes) {
  std::uint64_t sum = 0;
  for (auto s : sizes) sum += s;
  if (sum != n) throw std::invalid_argument("partition_probability_terms: sizes must sum to n");
  if (!(c >= 0) || c > static_cast<double>(n))
    throw std::invalid_argument("partition_probability_terms: need 0 <= c <= n");
  const double p = c / static_cast<double>(n);
  const double log_q = std::log1p(-p);

  PartitionLogTerms out;
  std::int64_t cross = 0;
  for (int i = 0; i < 5; ++i)
    cross += static_cast<std::int64_t>(sizes[i] * sizes[(i + 1) % 5]);
  out.s_pairs = static_cast<std::int64_t>(n * (n - 1) / 2) - cross;
  out.log_p12 = static_cast<double>(out.s_pairs) * log_q;

  out.log_p3 = 0;
  for (int i = 1; i < 5; ++i) {
    if (sizes[i] == 0) continue;  // empty class: factor 1
    out.log_p3 +=
        static_cast<double>(sizes[i]) * std::log1p(-std::exp(static_cast<double>(sizes[i - 1]) * log_q));
  }

  const double n2 = static_cast<double>(sizes[2]), n3 = static_cast<double>(sizes[3]);
  if (sizes[2] == 0) {
    out.log_p4_upper = 0;
  } else {
    const double inner = n3 * (std::log1p(-1.0 / n2) + log_q);
    out.log_p4_upper = n2 * std::log1p(-std::exp(inner));
  }
  return out;
}

}  // namespace oddhom

#endif  // ODDHOM_FIRST_MOMENT_HPP
