#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "evolexis/lexis_dag.hpp"

namespace evolexis {

/// Which nodes the greedy core search may remove from the real DAG.
enum class CoreCandidates {
  /// Intermediates and sources. Weakly hierarchical DAGs cannot reach the
  /// threshold through intermediates alone; their cores are mostly sources.
  IntermediatesAndSources,
  IntermediatesOnly,
};

struct CoreOptions {
  double tau = 0.85;
  CoreCandidates candidates = CoreCandidates::IntermediatesAndSources;
};

struct CoreSet {
  std::vector<NodeId> members;             // in selection order
  std::vector<std::uint64_t> centrality;   // each member's path count when selected
  double tau = 0.0;
  std::uint64_t total_paths = 0;           // L_T
  std::uint64_t remaining_paths = 0;       // after removing all members
  bool reached = true;                     // remaining <= tau * total

  [[nodiscard]] std::size_t size() const { return members.size(); }
  [[nodiscard]] double covered_fraction() const;
};

/// Source-to-target path counts with some nodes deleted.
struct PathCounts {
  std::vector<std::uint64_t> from_sources;  // P_S, indexed by node id
  std::vector<std::uint64_t> to_targets;    // P_T, indexed by node id
  std::uint64_t total = 0;                  // surviving source-target paths
};

/// `removed` is indexed by node id (may be empty for "nothing removed").
[[nodiscard]] PathCounts count_paths(const LexisDag& dag, const std::vector<bool>& removed = {});

/// P(v) = P_S(v) * P_T(v) for every intermediate v.
[[nodiscard]] std::map<NodeId, std::uint64_t> path_centrality(const LexisDag& dag);

/// Greedy core: repeatedly removes the candidate with the highest path
/// centrality (ties: longer string, then lower id) until at most tau * L_T
/// source-target paths remain.
[[nodiscard]] CoreSet g_core(const LexisDag& dag, const CoreOptions& options = {});

/// Core of the flattened DAG, where every target is tiled directly by
/// sources; candidates are sources and targets.
[[nodiscard]] CoreSet flat_core(const LexisDag& dag, double tau);

struct HScore {
  double value = 0.0;
  CoreSet core;
  CoreSet flat;
};

/// 1 - |Core| / |Core_f|, clamped to [0, 1]; 0 for a DAG with no
/// intermediates. Throws DegenerateError when the flat core is empty.
[[nodiscard]] HScore h_score(const LexisDag& dag, const CoreOptions& options = {});

/// H-score from cores that were already computed for `dag`.
[[nodiscard]] double h_score_value(const LexisDag& dag, const CoreSet& core, const CoreSet& flat);

/// Fraction of the original L_T paths left after deleting the first j core
/// members, for j = 0..|core|.
[[nodiscard]] std::vector<std::pair<std::size_t, double>> robustness_curve(const LexisDag& dag,
                                                                           const CoreSet& core);

}  // namespace evolexis
