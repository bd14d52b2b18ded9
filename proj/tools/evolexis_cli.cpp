// Command-line front end: run experiments and inspect DAG snapshots.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evolexis/centrality.hpp"
#include "evolexis/config.hpp"
#include "evolexis/engine.hpp"
#include "evolexis/errors.hpp"
#include "evolexis/metrics.hpp"
#include "evolexis/serialize.hpp"

namespace {

using namespace evolexis;

nlohmann::ordered_json core_json(const LexisDag& dag, const CoreSet& core,
                                 const SymbolTable& symbols) {
  auto members = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < core.members.size(); ++i) {
    members.push_back({{"id", core.members[i].value},
                       {"str", symbols.render(dag.str(core.members[i]))},
                       {"centrality", core.centrality[i]}});
  }
  return {{"size", core.size()},
          {"total_paths", core.total_paths},
          {"remaining_paths", core.remaining_paths},
          {"reached", core.reached},
          {"members", members}};
}

nlohmann::ordered_json analyze(const LexisDag& dag, const CoreOptions& opts) {
  const SymbolTable symbols = SymbolTable::for_alphabet(dag.alphabet());
  nlohmann::ordered_json j;
  const ValidationReport problems = validate_dag(dag);
  auto violations = nlohmann::ordered_json::array();
  for (const Violation& v : problems) {
    violations.push_back({{"kind", to_string(v.kind)}, {"node", v.node.value}, {"detail", v.detail}});
  }
  j["valid"] = problems.empty();
  j["violations"] = violations;
  j["targets"] = dag.target_count();
  j["intermediates"] = dag.intermediate_count();
  j["edge_cost"] = dag.edge_cost();
  j["total_target_length"] = dag.total_target_length();
  if (dag.target_count() == 0) return j;

  std::vector<SymbolString> targets;
  for (NodeId t : dag.targets()) targets.push_back(dag.str(t));
  j["normalized_cost"] = normalized_cost(dag);
  j["avg_depth"] = avg_depth(dag);
  j["avg_node_length"] = avg_node_length(dag);
  j["diversity"] = diversity(targets);
  const CoreSet core = g_core(dag, opts);
  const CoreSet flat = flat_core(dag, opts.tau);
  try {
    j["h_score"] = h_score_value(dag, core, flat);
  } catch (const DegenerateError&) {
    j["h_score"] = nullptr;
  }
  j["core"] = core_json(dag, core, symbols);
  j["flat_core_size"] = flat.size();
  return j;
}

CoreOptions core_options(double tau, bool intermediates_only) {
  return CoreOptions{tau, intermediates_only ? CoreCandidates::IntermediatesOnly
                                             : CoreCandidates::IntermediatesAndSources};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evo-Lexis: evolution of hierarchical string DAGs"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "evolexis_out";
  std::size_t jobs = 1;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config,-c", config_path, "key = value config file")->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override rng_seed");
  run->add_option("--out,-o", out_dir, "Output directory")->capture_default_str();
  run->add_option("--jobs,-j", jobs, "Replicates run in parallel")->capture_default_str();

  std::string dag_path;
  double tau = 0.85;
  bool intermediates_only = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Recompute metrics for a DAG snapshot");
  analyze_cmd->add_option("--dag,-d", dag_path, "Snapshot JSON")->required()
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--tau", tau, "Core threshold")->capture_default_str();
  analyze_cmd->add_flag("--intermediates-only", intermediates_only,
                        "Restrict the core search to intermediates");

  std::string dot_out;
  std::size_t width = 24;
  auto* dot_cmd = app.add_subcommand("export-dot", "Write a snapshot as Graphviz DOT");
  dot_cmd->add_option("--dag,-d", dag_path, "Snapshot JSON")->required()->check(CLI::ExistingFile);
  dot_cmd->add_option("--out,-o", dot_out, "DOT file (stdout if omitted)");
  dot_cmd->add_option("--width", width, "Label width")->capture_default_str();

  auto* cs_cmd = app.add_subcommand("compare-cs", "Compare a snapshot with a clean-slate rebuild");
  cs_cmd->add_option("--dag,-d", dag_path, "Snapshot JSON")->required()->check(CLI::ExistingFile);
  cs_cmd->add_option("--tau", tau, "Core threshold")->capture_default_str();
  cs_cmd->add_flag("--intermediates-only", intermediates_only,
                   "Restrict the core search to intermediates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      RunConfig cfg = load_config(config_path);
      if (seed) cfg.rng_seed = *seed;
      const auto results = run_experiment(cfg, out_dir, jobs);
      const auto& last = results.front().records.back();
      std::cout << "wrote " << results.size() << " run(s) to " << out_dir
                << "; run 0 final normalized_cost=" << last.normalized_cost << '\n';
    } else if (*analyze_cmd) {
      const LexisDag dag = load_snapshot(dag_path);
      std::cout << analyze(dag, core_options(tau, intermediates_only)).dump(2) << '\n';
    } else if (*dot_cmd) {
      const LexisDag dag = load_snapshot(dag_path);
      if (dot_out.empty()) {
        std::cout << to_dot(dag, width);
      } else {
        save_dot(dag, dot_out, width);
      }
    } else if (*cs_cmd) {
      const LexisDag dag = load_snapshot(dag_path);
      const ComparatorRecord c = clean_slate_compare(dag, core_options(tau, intermediates_only));
      nlohmann::ordered_json j;
      j["inc_edge_cost"] = c.inc_edge_cost;
      j["cs_edge_cost"] = c.cs_edge_cost;
      j["pid"] = c.pid;
      j["pid_upper_bound"] = c.pid_upper_bound;
      j["core_similarity"] = c.core_similarity;
      j["inc_avg_depth"] = c.inc_avg_depth;
      j["cs_avg_depth"] = c.cs_avg_depth;
      j["inc_h_score"] = c.inc_h_score ? nlohmann::ordered_json(*c.inc_h_score) : nullptr;
      j["cs_h_score"] = c.cs_h_score ? nlohmann::ordered_json(*c.cs_h_score) : nullptr;
      std::cout << j.dump(2) << '\n';
    }
  } catch (const LexisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
