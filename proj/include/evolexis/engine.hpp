#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evolexis/centrality.hpp"
#include "evolexis/config.hpp"
#include "evolexis/lexis_dag.hpp"
#include "evolexis/metrics.hpp"
#include "evolexis/rng.hpp"
#include "evolexis/targetgen.hpp"

namespace evolexis {

/// Incremental design against a clean-slate rebuild of the same targets.
struct ComparatorRecord {
  std::size_t iteration = 0;
  std::size_t inc_edge_cost = 0;
  std::size_t cs_edge_cost = 0;
  double pid = 1.0;
  double pid_upper_bound = 1.0;  // L_T / E(cs)
  double core_similarity = 1.0;  // LevJac of the two core string sets
  double inc_avg_depth = 1.0;
  double cs_avg_depth = 1.0;
  std::optional<double> inc_h_score;
  std::optional<double> cs_h_score;
};

struct MetricRecord {
  std::size_t iteration = 0;
  std::size_t target_count = 0;
  std::size_t edge_cost = 0;
  std::size_t intermediate_count = 0;
  std::size_t single_piece_targets = 0;
  double normalized_cost = 1.0;
  double avg_depth = 1.0;
  double avg_node_length = 0.0;
  double diversity = 0.0;
  std::size_t core_size = 0;
  std::size_t flat_core_size = 0;
  std::optional<double> h_score;
  std::optional<double> core_stability;
  std::optional<double> acceptance_likelihood;
  std::optional<std::size_t> trials;
  std::optional<double> cost_ratio;  // mean accepted cost, MRS over paired MR
  std::optional<ComparatorRecord> comparison;
  std::vector<std::string> core_strings;
  std::vector<std::uint64_t> core_centrality;
  std::string top1_core;
};

[[nodiscard]] nlohmann::ordered_json to_json(const MetricRecord& record);

struct RunState {
  RunConfig cfg;
  std::uint64_t seed = 0;
  LexisDag dag;
  std::deque<NodeId> fifo;  // live targets, oldest first
  std::size_t iteration = 0;
  Rng rng;
  SymbolTable symbols;
  std::vector<MetricRecord> history;
  std::vector<std::vector<SymbolString>> core_history;  // [iteration]
  std::vector<SymbolString> top1_history;               // [iteration]
  std::ostream* events = nullptr;                       // trial log, optional

  RunState(const RunConfig& config, std::uint64_t run_seed);
};

/// Builds the initial DAG from s random targets and records iteration 0.
RunState init_run(const RunConfig& cfg, std::uint64_t seed, std::ostream* events = nullptr);

/// One evolutionary iteration: generate a batch, expand, drop the oldest
/// targets beyond T_s, and append the resulting record.
const MetricRecord& step(RunState& state);

[[nodiscard]] ComparatorRecord clean_slate_compare(const RunState& state);
/// Same comparison for a standalone DAG (iteration is left at 0).
[[nodiscard]] ComparatorRecord clean_slate_compare(const LexisDag& inc, const CoreOptions& options);

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<MetricRecord> records;
  std::vector<SymbolString> top1_history;
  StasisAnalysis stasis_tight;  // max distance 0.1
  StasisAnalysis stasis_loose;  // max distance 0.2
};

using StepObserver = std::function<void(const RunState&)>;

/// Runs init_run plus cfg.iterations steps. The observer, if set, sees the
/// state after initialization and after every step.
RunResult simulate(const RunConfig& cfg, std::uint64_t seed, std::ostream* events = nullptr,
                   const StepObserver& observer = {});

/// Seed of replicate `run` for a base seed.
[[nodiscard]] std::uint64_t run_seed(std::uint64_t base, std::size_t run);

/// Per-iteration means over runs, as CSV with a header row.
[[nodiscard]] std::string summary_csv(const std::vector<RunResult>& runs);

[[nodiscard]] nlohmann::ordered_json stasis_json(const RunResult& run, const SymbolTable& symbols);

/// Executes cfg.runs replicates on up to `jobs` threads and writes, under
/// out_dir: config.txt, summary.csv and per run run_<r>/metrics.jsonl,
/// events.log, stasis.json plus snapshots at cfg.snapshot_at.
std::vector<RunResult> run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                      std::size_t jobs = 1);

}  // namespace evolexis
