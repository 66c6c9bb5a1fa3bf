#ifndef ODDHOM_EXPERIMENTS_HPP
#define ODDHOM_EXPERIMENTS_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/cycle_coloring.hpp"
#include "oddhom/graph_core.hpp"
#include "oddhom/hom_oracle.hpp"

namespace oddhom {

/// phi_l(c) = sum_{i=1}^{l-1} c^{2i+1} / (2(2i+1)); e^{-phi_l(c)} is the
/// limiting probability that G(n, c/n) has odd girth >= 2l+1 (no odd cycle
/// shorter than 2l+1, each length converging to an independent Poisson count).
inline double phi(std::uint32_t ell, double c) {
  if (ell < 1) throw std::invalid_argument("phi: ell must be >= 1");
  double sum = 0;
  for (std::uint32_t i = 1; i + 1 <= ell; ++i)
    sum += std::pow(c, 2.0 * i + 1) / (2.0 * (2 * i + 1));
  return sum;
}

enum class TrialOutcome : std::uint8_t { kHom, kOddGirthCert, kStructureFailure, kOracleNone };

inline const char* to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::kHom: return "Hom";
    case TrialOutcome::kOddGirthCert: return "OddGirthCert";
    case TrialOutcome::kStructureFailure: return "StructureFailure";
    case TrialOutcome::kOracleNone: return "OracleNone";
  }
  return "?";
}

inline TrialOutcome trial_outcome_from_string(const std::string& s) {
  if (s == "Hom") return TrialOutcome::kHom;
  if (s == "OddGirthCert") return TrialOutcome::kOddGirthCert;
  if (s == "StructureFailure") return TrialOutcome::kStructureFailure;
  if (s == "OracleNone") return TrialOutcome::kOracleNone;
  throw std::invalid_argument("unknown trial outcome: " + s);
}

struct TrialRecord {
  std::uint32_t n = 0;
  double c = 0;
  std::uint32_t ell = 0;
  std::uint64_t seed = 0;
  TrialOutcome outcome = TrialOutcome::kStructureFailure;
  std::uint32_t odd_girth = 0;  // 0 encodes "none" (bipartite)
  std::uint64_t ms = 0;         // wall time; the one nondeterministic field
};

/// One pipeline trial: sample G(n, c/n; seed), run hom_find, re-verify the
/// returned payload, and record the odd girth measured independently of the
/// pipeline. With run_oracle set (small n only), a pipeline structure
/// failure is settled by exhaustive search: no homomorphism => OracleNone.
inline TrialRecord run_trial(std::uint32_t n, double c, std::uint32_t ell, std::uint64_t seed,
                             bool run_oracle = false,
                             std::uint64_t budget = kDefaultSearchBudget) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.n = n;
  rec.c = c;
  rec.ell = ell;
  rec.seed = seed;

  const Graph g = generate_gnp(n, c, seed);
  const auto og = odd_girth(g);
  rec.odd_girth = og.length.value_or(0);

  auto outcome = hom_find(g, ell);
  if (auto* hom = std::get_if<Hom>(&outcome)) {
    rec.outcome = verify_coloring(g, hom->coloring).empty() ? TrialOutcome::kHom
                                                            : TrialOutcome::kStructureFailure;
  } else if (auto* cert = std::get_if<OddGirthCertificate>(&outcome)) {
    const bool ok = is_cycle_of(g, cert->cycle) && cert->cycle.size() % 2 == 1 &&
                    cert->cycle.size() < 2 * ell + 1;
    rec.outcome = ok ? TrialOutcome::kOddGirthCert : TrialOutcome::kStructureFailure;
  } else {
    rec.outcome = TrialOutcome::kStructureFailure;
    if (run_oracle) {
      const auto sr = hom_search(g, circulant(2 * ell + 1, ell), budget);
      if (sr.exhausted()) rec.outcome = TrialOutcome::kOracleNone;
    }
  }
  rec.ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
  return rec;
}

struct WilsonInterval {
  double lo = 0, hi = 1;
};

/// Wilson score interval for a binomial proportion at z standard normal
/// quantiles (z = 1.96 for 95%). Degenerates to [0,1] when trials == 0.
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double nd = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1 + z2 / nd;
  const double center = (phat + z2 / (2 * nd)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / nd + z2 / (4 * nd * nd)) / denom;
  return {center - half, center + half};
}

struct ExperimentConfig {
  std::uint32_t n = 1000;
  double c = 1.1;
  std::uint32_t ell = 2;
  std::uint32_t trials = 100;
  std::uint64_t base_seed = 1;  // trial i uses seed base_seed + i
  bool oracle = false;
  unsigned threads = 0;  // 0: hardware concurrency
  std::string csv_path;
  std::string report_path;
};

/// Empirical estimate of the circular-chromatic band (2 + 1/(l+1), 2 + 1/l]:
/// at small densities a graph lands there exactly when its odd girth is
/// 2l+1, with limiting probability e^{-phi_l} - e^{-phi_{l+1}}.
struct BandEstimate {
  std::uint32_t ell = 0;
  double predicted = 0;
  double empirical = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t hom_count = 0;
  std::uint64_t cert_count = 0;
  std::uint64_t failure_count = 0;
  std::uint64_t oracle_none_count = 0;
  std::uint64_t odd_girth_at_least_target = 0;  // odd girth >= 2*ell+1 (none counts)
  double p_odd_girth = 0;
  WilsonInterval wilson95{0, 1};
  double predicted_p = 0;  // e^{-phi_ell(c)}
  std::vector<BandEstimate> bands;
};

inline void write_trials_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << "n,c,ell,seed,outcome,odd_girth,ms\n";
  for (const auto& r : records) {
    std::ostringstream line;
    line << r.n << ',' << r.c << ',' << r.ell << ',' << r.seed << ',' << to_string(r.outcome)
         << ',' << r.odd_girth << ',' << r.ms << '\n';
    out << line.str();
  }
}

inline std::vector<TrialRecord> parse_trials_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,c,ell,seed,outcome,odd_girth,ms")
    throw std::runtime_error("trial CSV: bad header");
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    TrialRecord r;
    auto next = [&]() {
      if (!std::getline(ls, field, ',')) throw std::runtime_error("trial CSV: short line");
      return field;
    };
    r.n = static_cast<std::uint32_t>(std::stoul(next()));
    r.c = std::stod(next());
    r.ell = static_cast<std::uint32_t>(std::stoul(next()));
    r.seed = std::stoull(next());
    r.outcome = trial_outcome_from_string(next());
    r.odd_girth = static_cast<std::uint32_t>(std::stoul(next()));
    r.ms = std::stoull(next());
    records.push_back(r);
  }
  return records;
}

/// Consistency re-check for persisted trial records: outcome tags valid and
/// the recorded odd girth compatible with the outcome (a certificate needs
/// an odd cycle shorter than 2l+1; a homomorphism needs odd girth >= 2l+1).
inline bool verify_trial_records(const std::vector<TrialRecord>& records, std::string* why = nullptr) {
  for (const auto& r : records) {
    const std::uint32_t target = 2 * r.ell + 1;
    if (r.odd_girth != 0 && (r.odd_girth % 2 == 0 || r.odd_girth < 3)) {
      if (why) *why = "odd_girth field not an odd cycle length";
      return false;
    }
    if (r.outcome == TrialOutcome::kOddGirthCert && !(r.odd_girth != 0 && r.odd_girth < target)) {
      if (why) *why = "OddGirthCert with odd girth not below 2l+1";
      return false;
    }
    if (r.outcome == TrialOutcome::kHom && r.odd_girth != 0 && r.odd_girth < target) {
      if (why) *why = "Hom outcome with odd girth below 2l+1";
      return false;
    }
  }
  return true;
}

inline ExperimentReport aggregate_trials(const ExperimentConfig& config,
                                         const std::vector<TrialRecord>& records) {
  ExperimentReport report;
  report.config = config;
  const std::uint32_t target = 2 * config.ell + 1;
  for (const auto& r : records) {
    switch (r.outcome) {
      case TrialOutcome::kHom: ++report.hom_count; break;
      case TrialOutcome::kOddGirthCert: ++report.cert_count; break;
      case TrialOutcome::kStructureFailure: ++report.failure_count; break;
      case TrialOutcome::kOracleNone: ++report.oracle_none_count; break;
    }
    if (r.odd_girth == 0 || r.odd_girth >= target) ++report.odd_girth_at_least_target;
  }
  const std::uint64_t t = records.size();
  report.p_odd_girth = t ? static_cast<double>(report.odd_girth_at_least_target) / t : 0.0;
  report.wilson95 = wilson_interval(report.odd_girth_at_least_target, t, 1.959963984540054);
  report.predicted_p = std::exp(-phi(config.ell, config.c));
  for (std::uint32_t ell = 1; ell <= config.ell + 2; ++ell) {
    BandEstimate band;
    band.ell = ell;
    band.predicted = std::exp(-phi(ell, config.c)) - std::exp(-phi(ell + 1, config.c));
    std::uint64_t hits = 0;
    for (const auto& r : records)
      if (r.odd_girth == 2 * ell + 1) ++hits;
    band.empirical = t ? static_cast<double>(hits) / t : 0.0;
    report.bands.push_back(band);
  }
  return report;
}

/// Run config.trials independent trials (seed base_seed + i) across worker
/// threads; aggregation is by trial index, so the persisted records and the
/// report do not depend on scheduling.
inline std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
  std::vector<TrialRecord> records(config.trials);
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, config.trials ? config.trials : 1));
  std::atomic<std::uint32_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint32_t i = cursor.fetch_add(1);
      if (i >= config.trials) return;
      records[i] = run_trial(config.n, config.c, config.ell, config.base_seed + i, config.oracle);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config,
                                       std::vector<TrialRecord>* records_out = nullptr) {
  auto records = run_trials(config);
  if (!config.csv_path.empty()) {
    {
      std::ofstream out(config.csv_path);
      if (!out) throw std::runtime_error("cannot open for writing: " + config.csv_path);
      write_trials_csv(records, out);
      if (!out) throw std::runtime_error("write failed: " + config.csv_path);
    }
    // Trustless round trip: whatever was persisted must re-verify.
    std::ifstream in(config.csv_path);
    std::string why;
    if (!verify_trial_records(parse_trials_csv(in), &why))
      throw std::runtime_error(config.csv_path + ": persisted records fail verification: " + why);
  }
  std::string why;
  if (!verify_trial_records(records, &why))
    throw std::runtime_error("trial records fail verification: " + why);
  auto report = aggregate_trials(config, records);
  if (records_out) *records_out = std::move(records);
  return report;
}

}  // namespace oddhom

#endif  // ODDHOM_EXPERIMENTS_HPP
