#ifndef ODDHOM_SERIALIZE_HPP
#define ODDHOM_SERIALIZE_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/cycle_coloring.hpp"
#include "oddhom/decomposition.hpp"
#include "oddhom/experiments.hpp"
#include "oddhom/first_moment.hpp"
#include "oddhom/hom_oracle.hpp"

namespace oddhom {

using json = nlohmann::json;

inline json to_json(const CycleColoring& col) {
  return json{{"ell", col.ell}, {"colors", col.colors}};
}

inline CycleColoring cycle_coloring_from_json(const json& j) {
  CycleColoring col;
  col.ell = j.at("ell").get<std::uint32_t>();
  col.colors = j.at("colors").get<std::vector<std::uint16_t>>();
  return col;
}

inline json to_json(const Decomposition& d) {
  json f = json::array();
  for (const auto& [u, v] : d.forest.edges()) f.push_back({u, v});
  json m = json::array();
  for (std::size_t i = 0; i < d.m_edges.size(); ++i)
    m.push_back({{"edge", {d.m_edges[i].first, d.m_edges[i].second}},
                 {"tag", d.m_tags[i] == MClass::kLongCycleCenter ? "M1" : "M2"}});
  return json{{"k", d.k}, {"F", std::move(f)}, {"M", std::move(m)}};
}

inline json to_json(const StructureFailure& f) {
  json v = json::array();
  for (const auto& viol : f.violations)
    v.push_back({{"a", {viol.a.first, viol.a.second}},
                 {"b", {viol.b.first, viol.b.second}},
                 {"dist", viol.dist}});
  return json{{"stage", f.stage}, {"detail", f.detail}, {"violations", std::move(v)}};
}

inline json to_json(const HomOutcome& outcome) {
  if (const auto* hom = std::get_if<Hom>(&outcome))
    return json{{"outcome", "Hom"}, {"coloring", to_json(hom->coloring)}};
  if (const auto* cert = std::get_if<OddGirthCertificate>(&outcome))
    return json{{"outcome", "OddGirthCertificate"},
                {"cycle", cert->cycle},
                {"length", cert->cycle.size()}};
  const auto& fail = std::get<StructureFailure>(outcome);
  json j = to_json(fail);
  j["outcome"] = "StructureFailure";
  return j;
}

inline json to_json(const std::vector<ProximityViolation>& violations) {
  json arr = json::array();
  for (const auto& v : violations)
    arr.push_back({{"cycle_a", v.cycle_a}, {"cycle_b", v.cycle_b}, {"dist", v.dist}});
  return arr;
}

/// bound-grid report: the grid maximum plus the linearized certificate for
/// the requested rho.
inline json to_json(const GridReport& report, const CertifiedBound& cert) {
  return json{{"c", report.c},
              {"delta", report.delta},
              {"max_value", report.max_value},
              {"argmax", report.argmax},
              {"points_evaluated", report.points_evaluated},
              {"certified_sup_bound", report.certified_sup_bound},
              {"epsilon", cert.epsilon},
              {"holds", cert.holds}};
}

inline json to_json(const ExperimentReport& r) {
  json bands = json::array();
  for (const auto& b : r.bands)
    bands.push_back({{"ell", b.ell}, {"predicted", b.predicted}, {"empirical", b.empirical}});
  return json{
      {"schema", "1"},
      {"config",
       {{"n", r.config.n},
        {"c", r.config.c},
        {"ell", r.config.ell},
        {"trials", r.config.trials},
        {"base_seed", r.config.base_seed},
        {"oracle", r.config.oracle}}},
      {"counts",
       {{"hom", r.hom_count},
        {"odd_girth_cert", r.cert_count},
        {"structure_failure", r.failure_count},
        {"oracle_none", r.oracle_none_count}}},
      {"p_odd_girth_ge_target", r.p_odd_girth},
      {"wilson95", {r.wilson95.lo, r.wilson95.hi}},
      {"predicted", r.predicted_p},
      {"bands", std::move(bands)}};
}

inline void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// run_experiment plus report persistence (CSV handled by run_experiment).
inline ExperimentReport run_and_persist_experiment(const ExperimentConfig& config,
                                                   std::vector<TrialRecord>* records_out = nullptr) {
  auto report = run_experiment(config, records_out);
  if (!config.report_path.empty()) save_json(to_json(report), config.report_path);
  return report;
}

}  // namespace oddhom

#endif  // ODDHOM_SERIALIZE_HPP
