#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oddhom/experiments.hpp"
#include "oddhom/serialize.hpp"

using namespace oddhom;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV with the wall-time column blanked; everything else must be stable.
std::string normalize_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto last_comma = line.rfind(',');
    out += line.substr(0, last_comma + 1);
    out += "-\n";
  }
  return out;
}

struct TempPath {
  std::string path;
  explicit TempPath(std::string p) : path(std::move(p)) {}
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("phi partial sums") {
  REQUIRE(phi(2, 1.2) == Catch::Approx(0.288).epsilon(1e-12));
  REQUIRE(phi(2, 2.0) == Catch::Approx(8.0 / 6.0).epsilon(1e-12));
  REQUIRE(phi(3, 1.0) == Catch::Approx(4.0 / 15.0).epsilon(1e-12));
  REQUIRE(phi(1, 3.7) == 0.0);
  REQUIRE_THROWS_AS(phi(0, 1.0), std::invalid_argument);
}

TEST_CASE("wilson interval closed forms at the extremes") {
  const double z = 1.959963984540054;
  const std::uint64_t n = 400;
  const auto at0 = wilson_interval(0, n, z);
  REQUIRE(at0.lo == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(at0.hi == Catch::Approx(z * z / (n + z * z)).epsilon(1e-12));
  const auto at_n = wilson_interval(n, n, z);
  REQUIRE(at_n.hi == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(at_n.lo == Catch::Approx(static_cast<double>(n) / (n + z * z)).epsilon(1e-12));
  const auto empty = wilson_interval(0, 0, z);
  REQUIRE(empty.lo == 0.0);
  REQUIRE(empty.hi == 1.0);
}

TEST_CASE("run_trial produces self-consistent records") {
  SECTION("typical sparse trial") {
    const auto rec = run_trial(50, 1.05, 2, 1);
    REQUIRE(rec.n == 50);
    REQUIRE(rec.seed == 1);
    std::string why;
    REQUIRE(verify_trial_records({rec}, &why));
  }
  SECTION("c = 0: empty graph maps trivially") {
    const auto rec = run_trial(50, 0.0, 2, 12);
    REQUIRE(rec.outcome == TrialOutcome::kHom);
    REQUIRE(rec.odd_girth == 0);
  }
}

TEST_CASE("oracle mode settles structure failures and validates outcomes") {
  ExperimentConfig cfg;
  cfg.n = 30;
  cfg.c = 1.1;
  cfg.ell = 2;
  cfg.trials = 60;
  cfg.base_seed = 100;
  cfg.oracle = true;
  cfg.threads = 1;
  std::vector<TrialRecord> records;
  run_experiment(cfg, &records);
  REQUIRE(records.size() == 60);
  for (const auto& rec : records) {
    const Graph g = generate_gnp(rec.n, rec.c, rec.seed);
    const auto truth = hom_search(g, circulant(5, 2));
    REQUIRE_FALSE(truth.status == HomSearchResult::Status::kBudgetExceeded);
    switch (rec.outcome) {
      case TrialOutcome::kHom:
        REQUIRE(truth.found());
        break;
      case TrialOutcome::kOddGirthCert:
        REQUIRE(rec.odd_girth < 5);
        REQUIRE(rec.odd_girth == 3);
        break;
      case TrialOutcome::kOracleNone:
        REQUIRE(truth.exhausted());
        break;
      case TrialOutcome::kStructureFailure:
        // With the oracle on, a surviving failure means a hom exists but the
        // pipeline missed it.
        REQUIRE(truth.found());
        break;
    }
  }
}

TEST_CASE("empty experiment aggregates without dividing by zero") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  const auto report = run_experiment(cfg);
  REQUIRE(report.hom_count == 0);
  REQUIRE(report.p_odd_girth == 0.0);
  REQUIRE(report.wilson95.lo == 0.0);
  REQUIRE(report.wilson95.hi == 1.0);
}

TEST_CASE("trial CSV round trip") {
  ExperimentConfig cfg;
  cfg.n = 40;
  cfg.c = 1.2;
  cfg.ell = 2;
  cfg.trials = 25;
  cfg.threads = 2;
  const auto records = run_trials(cfg);
  std::stringstream buf;
  write_trials_csv(records, buf);
  const auto back = parse_trials_csv(buf);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    REQUIRE(back[i].n == records[i].n);
    REQUIRE(back[i].c == records[i].c);
    REQUIRE(back[i].ell == records[i].ell);
    REQUIRE(back[i].seed == records[i].seed);
    REQUIRE(back[i].outcome == records[i].outcome);
    REQUIRE(back[i].odd_girth == records[i].odd_girth);
  }
}

TEST_CASE("verify_trial_records rejects tampered artifacts") {
  TrialRecord good = run_trial(40, 1.2, 2, 7);
  REQUIRE(verify_trial_records({good}));

  TrialRecord bad_cert = good;
  bad_cert.outcome = TrialOutcome::kOddGirthCert;
  bad_cert.odd_girth = 0;
  REQUIRE_FALSE(verify_trial_records({bad_cert}));

  TrialRecord bad_hom = good;
  bad_hom.outcome = TrialOutcome::kHom;
  bad_hom.odd_girth = 3;  // contradiction at ell = 2
  REQUIRE_FALSE(verify_trial_records({bad_hom}));

  TrialRecord bad_even = good;
  bad_even.odd_girth = 4;
  REQUIRE_FALSE(verify_trial_records({bad_even}));
}

TEST_CASE("reruns persist identical artifacts (timing column aside)") {
  TempPath csv_a("/tmp/oddhom_trials_a.csv"), csv_b("/tmp/oddhom_trials_b.csv");
  TempPath rep_a("/tmp/oddhom_report_a.json"), rep_b("/tmp/oddhom_report_b.json");
  ExperimentConfig cfg;
  cfg.n = 300;
  cfg.c = 1.15;
  cfg.ell = 2;
  cfg.trials = 40;
  cfg.base_seed = 17;
  cfg.threads = 2;

  cfg.csv_path = csv_a.path;
  cfg.report_path = rep_a.path;
  run_and_persist_experiment(cfg);
  cfg.csv_path = csv_b.path;
  cfg.report_path = rep_b.path;
  run_and_persist_experiment(cfg);

  REQUIRE(normalize_ms(slurp(csv_a.path)) == normalize_ms(slurp(csv_b.path)));
  REQUIRE(slurp(rep_a.path) == slurp(rep_b.path));

  // Records land in trial order regardless of scheduling: seed column is
  // base_seed + index.
  std::istringstream in(slurp(csv_a.path));
  std::string line;
  std::getline(in, line);
  std::uint64_t expected_seed = 17;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(ls, field, ',');
    REQUIRE(std::stoull(field) == expected_seed++);
  }
}

TEST_CASE("experiment report fields cohere") {
  ExperimentConfig cfg;
  cfg.n = 2000;
  cfg.c = 1.2;
  cfg.ell = 2;
  cfg.trials = 300;
  cfg.base_seed = 5;
  const auto report = run_experiment(cfg);
  REQUIRE(report.hom_count + report.cert_count + report.failure_count +
              report.oracle_none_count ==
          cfg.trials);
  REQUIRE(report.predicted_p == Catch::Approx(std::exp(-0.288)).epsilon(1e-12));
  REQUIRE(report.wilson95.lo >= 0.0);
  REQUIRE(report.wilson95.hi <= 1.0);
  REQUIRE(report.wilson95.lo <= report.p_odd_girth);
  REQUIRE(report.p_odd_girth <= report.wilson95.hi);

  // Wide statistical gate at small n; the full-scale law lives in acceptance.
  const auto wide = wilson_interval(report.odd_girth_at_least_target, cfg.trials, 4.0);
  REQUIRE(report.predicted_p >= wide.lo);
  REQUIRE(report.predicted_p <= wide.hi);

  double band_sum = 0;
  for (const auto& band : report.bands) {
    REQUIRE(band.predicted >= 0.0);
    REQUIRE(band.empirical >= 0.0);
    band_sum += band.empirical;
  }
  REQUIRE(band_sum <= 1.0 + 1e-12);
}
