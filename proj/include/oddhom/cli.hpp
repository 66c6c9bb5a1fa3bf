#ifndef ODDHOM_CLI_HPP
#define ODDHOM_CLI_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddhom/serialize.hpp"

namespace oddhom {

// Exit codes: 0 success, 1 computational failure outcome (structure failure,
// exhausted budget, indeterminate, missing threshold), 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputationalFailure = 1;
inline constexpr int kExitUsage = 2;

namespace cli_detail {

struct GraphSource {
  std::string input_path;
  std::uint64_t n = 0;
  double c = -1;
  std::uint64_t seed = 1;

  void add_options(CLI::App& cmd, bool generator_only = false) {
    if (!generator_only)
      cmd.add_option("--input", input_path, "graph file (text: 'n m' then edge lines)");
    cmd.add_option("--n", n, "vertex count for generated G(n, c/n)");
    cmd.add_option("--c", c, "density parameter c for generated G(n, c/n)");
    cmd.add_option("--seed", seed, "generator seed")->capture_default_str();
  }

  Graph resolve() const {
    if (!input_path.empty()) return load_graph(input_path);
    if (n == 0 || c < 0)
      throw CLI::ValidationError("graph", "provide --input or both --n and --c");
    return generate_gnp(static_cast<Vertex>(n), c, seed);
  }
};

inline void emit(const json& j, const std::string& out_path, std::ostream& out) {
  if (!out_path.empty()) save_json(j, out_path);
  out << j.dump(2) << '\n';
}

// Flat key=value lines; blank lines and # comments ignored.
inline std::vector<std::pair<std::string, std::string>> parse_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("config", "cannot open: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("config", "expected key=value, got: " + line);
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

}  // namespace cli_detail

/// Entry point behind the `oddhom` binary; kept callable for tests.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"homomorphisms from sparse random graphs to odd cycles"};
  app.require_subcommand(1);

  int exit_code = kExitOk;

  // gen: write a G(n, c/n) sample to a graph file.
  {
    auto* cmd = app.add_subcommand("gen", "generate G(n, c/n) and save it");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd, true);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--out", *out_path, "output graph file")->required();
    cmd->callback([&out, src, out_path]() {
      const Graph g = src->resolve();
      save_graph(g, *out_path);
      out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    });
  }

  // odd-girth
  {
    auto* cmd = app.add_subcommand("odd-girth", "shortest odd cycle length");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd);
    auto as_json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([&out, src, as_json]() {
      const auto result = odd_girth(src->resolve());
      if (*as_json) {
        json j{{"odd_girth", nullptr}};
        if (result.length) {
          j["odd_girth"] = *result.length;
          j["cycle"] = result.cycle;
        }
        out << j.dump(2) << '\n';
      } else if (result.length) {
        out << *result.length << '\n';
      } else {
        out << "none\n";
      }
    });
  }

  // hom-find
  {
    auto* cmd = app.add_subcommand("hom-find", "constructive odd-cycle coloring pipeline");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd);
    auto ell = std::make_shared<std::uint32_t>(2);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--ell", *ell, "target odd cycle C_{2l+1}")->capture_default_str();
    cmd->add_option("--out", *out_path, "also write the outcome JSON here");
    cmd->callback([&out, &exit_code, src, ell, out_path]() {
      const auto outcome = hom_find(src->resolve(), *ell);
      cli_detail::emit(to_json(outcome), *out_path, out);
      if (std::holds_alternative<StructureFailure>(outcome)) exit_code = kExitComputationalFailure;
    });
  }

  // oracle: exhaustive homomorphism search to C_{2l+1}, C_{p,q}, or a file.
  {
    auto* cmd = app.add_subcommand("oracle", "exact backtracking homomorphism search");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd);
    auto ell = std::make_shared<std::uint32_t>(0);
    auto p = std::make_shared<std::uint32_t>(0);
    auto q = std::make_shared<std::uint32_t>(0);
    auto target_path = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(kDefaultSearchBudget);
    auto monotone_max = std::make_shared<std::uint32_t>(0);
    cmd->add_option("--ell", *ell, "target the odd cycle C_{2l+1}");
    cmd->add_option("--p", *p, "target circulant C_{p,q}: p");
    cmd->add_option("--q", *q, "target circulant C_{p,q}: q");
    cmd->add_option("--target", *target_path, "target graph file");
    cmd->add_option("--budget", *budget, "search node budget")->capture_default_str();
    cmd->add_option("--monotone-max", *monotone_max,
                    "instead check hom existence to C_{2l+1} for l = 1..this");
    cmd->callback([&out, &exit_code, src, ell, p, q, target_path, budget, monotone_max]() {
      const Graph g = src->resolve();
      if (*monotone_max > 0) {
        const auto report = monotonicity_check(g, *monotone_max, *budget);
        json arr = json::array();
        for (std::size_t i = 0; i < report.exists.size(); ++i)
          arr.push_back({{"ell", i + 1},
                         {"exists", report.exists[i] < 0 ? json(nullptr) : json(report.exists[i] == 1)}});
        out << json{{"per_ell", arr}, {"downward_closed", report.downward_closed}}.dump(2) << '\n';
        if (!report.all_decided) exit_code = kExitComputationalFailure;
        return;
      }
      Graph h;
      if (!target_path->empty())
        h = load_graph(*target_path);
      else if (*ell > 0)
        h = circulant(2 * *ell + 1, *ell);
      else if (*p > 0 && *q > 0)
        h = circulant(*p, *q);
      else
        throw CLI::ValidationError("oracle", "need --ell, --p/--q, or --target");
      const auto result = hom_search(g, h, *budget);
      json j{{"nodes", result.nodes}};
      switch (result.status) {
        case HomSearchResult::Status::kFound:
          j["result"] = "found";
          j["mapping"] = result.mapping.mapping;
          break;
        case HomSearchResult::Status::kNone:
          j["result"] = "none";
          break;
        case HomSearchResult::Status::kBudgetExceeded:
          j["result"] = "budget-exceeded";
          exit_code = kExitComputationalFailure;
          break;
      }
      out << j.dump(2) << '\n';
    });
  }

  // chi-c
  {
    auto* cmd = app.add_subcommand("chi-c", "exact circular chromatic number (small graphs)");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd);
    auto p_max = std::make_shared<std::uint32_t>(0);
    auto budget = std::make_shared<std::uint64_t>(kDefaultSearchBudget);
    auto as_json = std::make_shared<bool>(false);
    cmd->add_option("--p-max", *p_max, "largest circulant order scanned (default |V|)");
    cmd->add_option("--budget", *budget, "search node budget per probe")->capture_default_str();
    cmd->add_flag("--json", *as_json, "machine-readable output");
    cmd->callback([&out, &exit_code, src, p_max, budget, as_json]() {
      const auto result = circular_chromatic(src->resolve(), *p_max, *budget);
      if (*as_json) {
        json j{{"nodes", result.nodes}};
        j["chi_c"] = nullptr;
        if (result.exact) j["chi_c"] = {{"p", result.exact->p}, {"q", result.exact->q}};
        if (result.undecided)
          j["undecided"] = {{"p", result.undecided->p}, {"q", result.undecided->q}};
        out << j.dump(2) << '\n';
      } else if (result.exact) {
        out << result.exact->p << '/' << result.exact->q << '\n';
      } else {
        out << "indeterminate\n";
      }
      if (!result.decided()) exit_code = kExitComputationalFailure;
    });
  }

  // decompose
  {
    auto* cmd = app.add_subcommand("decompose", "forest + separated-edge-set decomposition");
    auto src = std::make_shared<cli_detail::GraphSource>();
    src->add_options(*cmd);
    auto k = std::make_shared<std::uint32_t>(6);
    auto long_threshold = std::make_shared<std::uint32_t>(0);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--k", *k, "required pairwise forest distance between removed edges")->capture_default_str();
    cmd->add_option("--long-threshold", *long_threshold,
                    "cycle length treated as long (default ceil(0.05 ln n))");
    cmd->add_option("--out", *out_path, "also write the decomposition JSON here");
    cmd->callback([&out, &exit_code, src, k, long_threshold, out_path]() {
      const Graph g = src->resolve();
      const std::uint32_t lt =
          *long_threshold ? *long_threshold : default_long_cycle_threshold(g.vertex_count());
      const auto result = decompose(g, *k, lt);
      if (const auto* d = std::get_if<Decomposition>(&result)) {
        cli_detail::emit(to_json(*d), *out_path, out);
      } else {
        json j = to_json(std::get<StructureFailure>(result));
        j["outcome"] = "StructureFailure";
        cli_detail::emit(j, *out_path, out);
        exit_code = kExitComputationalFailure;
      }
    });
  }

  // bound-grid
  {
    auto* cmd = app.add_subcommand("bound-grid", "grid maximization of the partition rate b");
    auto c = std::make_shared<double>(4.0);
    auto delta = std::make_shared<double>(0.0008);
    auto rho = std::make_shared<double>(1.0);
    auto threads = std::make_shared<unsigned>(0);
    auto min_class = std::make_shared<double>(0.06);
    auto max_ind_set = std::make_shared<double>(0.6);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--c", *c, "density parameter")->capture_default_str();
    cmd->add_option("--delta", *delta, "grid step")->capture_default_str();
    cmd->add_option("--rho", *rho, "bound to certify: sup b < rho")->capture_default_str();
    cmd->add_option("--threads", *threads, "worker threads (0: all cores)");
    cmd->add_option("--min-class", *min_class, "smallest allowed class fraction")->capture_default_str();
    cmd->add_option("--max-ind-set", *max_ind_set, "largest allowed independent fraction")->capture_default_str();
    cmd->add_option("--out", *out_path, "also write the report JSON here");
    cmd->callback([&out, c, delta, rho, threads, min_class, max_ind_set, out_path]() {
      const Region region{*min_class, *max_ind_set};
      const auto report = grid_search(*c, *delta, region, *threads);
      const auto cert = certify_bound(report, *rho);
      cli_detail::emit(to_json(report, cert), *out_path, out);
    });
  }

  // bipartite-threshold
  {
    auto* cmd = app.add_subcommand("bipartite-threshold",
                                   "largest beta with >= 1 expected induced bipartite subgraphs");
    auto c = std::make_shared<double>(2.774);
    cmd->add_option("--c", *c, "density parameter")->capture_default_str();
    cmd->callback([&out, &exit_code, c]() {
      const auto excl = ell_c_bound(*c);
      if (!excl) {
        out << json{{"c", *c}, {"beta_star", nullptr}}.dump(2) << '\n';
        exit_code = kExitComputationalFailure;
        return;
      }
      out << json{{"c", *c},
                  {"beta_star", excl->beta_star},
                  {"min_odd_length", excl->min_odd_length},
                  {"ell", excl->ell}}
                 .dump(2)
          << '\n';
    });
  }

  // experiment
  {
    auto* cmd = app.add_subcommand("experiment", "batch pipeline trials vs. the odd-girth law");
    auto config = std::make_shared<ExperimentConfig>();
    auto config_path = std::make_shared<std::string>();
    cmd->add_option("--config", *config_path, "flat key=value config file (flags win)");
    auto* opt_n = cmd->add_option("--n", config->n, "vertices per trial")->capture_default_str();
    auto* opt_c = cmd->add_option("--c", config->c, "density parameter")->capture_default_str();
    auto* opt_ell =
        cmd->add_option("--ell", config->ell, "target odd cycle C_{2l+1}")->capture_default_str();
    auto* opt_trials =
        cmd->add_option("--trials", config->trials, "number of trials")->capture_default_str();
    auto* opt_seed = cmd->add_option("--seed", config->base_seed, "base seed (trial i uses base+i)")
                         ->capture_default_str();
    auto* opt_oracle =
        cmd->add_flag("--oracle", config->oracle, "settle structure failures by exhaustive search");
    auto* opt_threads = cmd->add_option("--threads", config->threads, "worker threads (0: all cores)");
    auto* opt_csv = cmd->add_option("--csv", config->csv_path, "write per-trial records here");
    auto* opt_report =
        cmd->add_option("--report", config->report_path, "write the aggregated JSON report here");
    cmd->callback([&out, config, config_path, opt_n, opt_c, opt_ell, opt_trials, opt_seed,
                   opt_oracle, opt_threads, opt_csv, opt_report]() {
      if (!config_path->empty()) {
        for (const auto& [key, value] : cli_detail::parse_flat_config(*config_path)) {
          const bool from_flag =
              (key == "n" && opt_n->count()) || (key == "c" && opt_c->count()) ||
              (key == "ell" && opt_ell->count()) || (key == "trials" && opt_trials->count()) ||
              (key == "seed" && opt_seed->count()) || (key == "oracle" && opt_oracle->count()) ||
              (key == "threads" && opt_threads->count()) || (key == "csv" && opt_csv->count()) ||
              (key == "report" && opt_report->count());
          if (from_flag) continue;  // flags win
          if (key == "n") config->n = static_cast<std::uint32_t>(std::stoul(value));
          else if (key == "c") config->c = std::stod(value);
          else if (key == "ell") config->ell = static_cast<std::uint32_t>(std::stoul(value));
          else if (key == "trials") config->trials = static_cast<std::uint32_t>(std::stoul(value));
          else if (key == "seed") config->base_seed = std::stoull(value);
          else if (key == "oracle") config->oracle = value == "1" || value == "true";
          else if (key == "threads") config->threads = static_cast<unsigned>(std::stoul(value));
          else if (key == "csv") config->csv_path = value;
          else if (key == "report") config->report_path = value;
          else throw CLI::ValidationError("experiment", "unknown config key: " + key);
        }
      }
      const auto report = run_and_persist_experiment(*config);
      out << to_json(report).dump(2) << '\n';
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return exit_code;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), out, err);
}

}  // namespace oddhom

#endif  // ODDHOM_CLI_HPP
