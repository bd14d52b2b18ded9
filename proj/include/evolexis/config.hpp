#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evolexis/centrality.hpp"
#include "evolexis/targetgen.hpp"

namespace evolexis {

/// Parameters of one evolutionary experiment. Defaults are the desk-scale
/// profile; the original full-scale values are s=10, n=100, k=200, b=10,
/// T_s=100 over 5000 iterations and 10 runs.
struct RunConfig {
  std::size_t s = 5;            // initial random targets
  std::size_t n = 20;           // alphabet size
  std::size_t k = 50;           // target length
  std::size_t b = 5;            // batch size
  std::size_t T_s = 30;         // steady-state target count
  std::size_t iterations = 500;
  std::size_t runs = 3;
  GenModelConfig model;         // model.k mirrors k
  double tau = 0.85;
  CoreCandidates core_candidates = CoreCandidates::IntermediatesAndSources;
  std::size_t eval_every = 100; // clean-slate comparison cadence; 0 disables
  std::uint64_t rng_seed = 1;
  std::size_t stability_window = 10;
  std::size_t stasis_min_length = 100;
  bool paired_mr = true;        // MRS runs also cost a paired MR batch
  bool validate_steps = false;  // run validate_dag after every step
  std::vector<std::size_t> snapshot_at;  // iterations that get DAG snapshots
  std::size_t dot_label_width = 24;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Keys follow the field
/// names above (s, n, k, b, T_s, ...), plus `model`, `beta`, `ratio`
/// (weighted|printed), `costing` (parse|committed), `stall_limit` and
/// `core_candidates` (all|intermediates).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string to_text(const RunConfig& cfg);

}  // namespace evolexis
