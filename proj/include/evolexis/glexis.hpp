#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evolexis/lexis_dag.hpp"

namespace evolexis {

/// A repeated token substring over the extended alphabet, with the
/// non-overlapping occurrences the greedy count selected.
struct RepeatCandidate {
  std::vector<NodeId> tokens;
  std::size_t occurrences = 0;  // f
  std::size_t token_length = 0; // l
  std::int64_t saving = 0;      // f * (l - 1) - l
  std::vector<TokenRun> sites;
};

/// Edge-cost reduction from materializing a run of `token_length` pieces
/// found `occurrences` times: each occurrence collapses to one edge and the
/// new node costs `token_length` edges.
[[nodiscard]] constexpr std::int64_t repeat_saving(std::size_t occurrences,
                                                   std::size_t token_length) {
  return static_cast<std::int64_t>(occurrences) * (static_cast<std::int64_t>(token_length) - 1) -
         static_cast<std::int64_t>(token_length);
}

/// Counts non-overlapping occurrences of `tokens` in `form`, matching greedily
/// left to right, and appends their offsets to `offsets` if given.
std::size_t count_non_overlapping(std::span<const NodeId> form, std::span<const NodeId> tokens,
                                  std::vector<std::size_t>* offsets = nullptr);

struct GlexisOptions {
  /// Smallest saving worth materializing. Zero admits break-even repeats,
  /// which is what lets the greedy build on earlier additions (aab -> aabc).
  std::int64_t min_saving = 0;
};

/// Best candidate among all token substrings (length >= 2, at least two
/// non-overlapping occurrences) of the ParseForms of `hosts`. Ties go to the
/// longer run, then to the earliest first occurrence in host order. Runs whose
/// string already names an intermediate are skipped.
[[nodiscard]] std::optional<RepeatCandidate> best_repeat(const LexisDag& dag,
                                                         std::span<const NodeId> hosts,
                                                         const GlexisOptions& options = {});
/// best_repeat over every non-source node.
[[nodiscard]] std::optional<RepeatCandidate> best_repeat(const LexisDag& dag,
                                                         const GlexisOptions& options = {});

struct GlexisStep {
  RepeatCandidate chosen;
  NodeId node;
  std::size_t cost_before = 0;
  std::size_t cost_after = 0;
};

/// Called before each addition with the current DAG and the chosen candidate.
using GlexisObserver = std::function<void(const LexisDag&, const RepeatCandidate&)>;

/// Greedy loop restricted to `hosts`: materializes best_repeat until none
/// remains, adding every new intermediate to the scanned hosts.
std::vector<GlexisStep> glexis_compress(LexisDag& dag, std::vector<NodeId> hosts,
                                        const GlexisOptions& options = {},
                                        const GlexisObserver& observer = {});

/// Clean-slate construction: flat DAG for `targets`, then greedy compression
/// over every node.
[[nodiscard]] LexisDag glexis_build(const Alphabet& alphabet, std::span<const SymbolString> targets,
                                    const GlexisOptions& options = {},
                                    std::vector<GlexisStep>* trace = nullptr,
                                    const GlexisObserver& observer = {});

/// Continues greedy compression of an existing DAG over all of its nodes.
std::vector<GlexisStep> glexis_build(LexisDag& seed, const GlexisOptions& options = {},
                                     const GlexisObserver& observer = {});

}  // namespace evolexis
