#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evolexis/glexis.hpp"
#include "evolexis/lexis_dag.hpp"

namespace evolexis {

/// E(D) / L_T.
[[nodiscard]] double normalized_cost(const LexisDag& dag);

/// Penalty of incremental design: E(inc) / E(cs), both supporting the same
/// targets.
[[nodiscard]] double pid(const LexisDag& inc, const LexisDag& clean_slate);
/// Builds the clean-slate DAG for inc's targets and returns the ratio.
[[nodiscard]] double pid(const LexisDag& inc, const GlexisOptions& options = {});

/// Clean-slate DAG for the targets of `dag`, in target id order.
[[nodiscard]] LexisDag clean_slate(const LexisDag& dag, const GlexisOptions& options = {});

/// Mean over targets of the mean source-to-target path length.
[[nodiscard]] double avg_depth(const LexisDag& dag);

/// Mean string length of the intermediates; 0 when there are none.
[[nodiscard]] double avg_node_length(const LexisDag& dag);

/// Number of targets tiled by a single piece.
[[nodiscard]] std::size_t single_piece_targets(const LexisDag& dag);

/// Edit distance (insertions, deletions, substitutions).
[[nodiscard]] std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b);

/// 1 - LD(a, b) / max(|a|, |b|).
[[nodiscard]] double similarity(std::span<const Symbol> a, std::span<const Symbol> b);

/// LD(a, b) / max(|a|, |b|); 0 for two empty strings.
[[nodiscard]] double normalized_distance(std::span<const Symbol> a, std::span<const Symbol> b);

/// Levenshtein-Jaccard similarity of two non-empty string sets: best-match
/// similarities summed in both directions over |A| + |B|.
[[nodiscard]] double lev_jaccard(std::span<const SymbolString> a, std::span<const SymbolString> b);

struct DiversityResult {
  std::size_t medoid = 0;  // index into the input
  double value = 0.0;      // mean LD from the medoid, medoid included
};

[[nodiscard]] DiversityResult diversity_with_medoid(std::span<const SymbolString> strings);
[[nodiscard]] double diversity(std::span<const SymbolString> strings);

/// LevJac between the core set at i and at i - window; empty where either set
/// is missing or empty.
[[nodiscard]] std::vector<std::optional<double>> core_stability(
    std::span<const std::vector<SymbolString>> history, std::size_t window);

struct StasisPeriod {
  std::size_t start = 0;  // first iteration index
  std::size_t end = 0;    // last iteration index, inclusive

  [[nodiscard]] std::size_t length() const { return end - start + 1; }
  friend bool operator==(const StasisPeriod&, const StasisPeriod&) = default;
};

struct StasisAnalysis {
  std::vector<double> step_distance;  // [i] = normalized LD(top1[i-1], top1[i]); [0] = 0
  std::vector<StasisPeriod> periods;
  /// cross[p][q - p - 1]: normalized LD between the top-1 strings at the start
  /// of period p and of a later period q.
  std::vector<std::vector<double>> cross_distances;
  double fraction_in_stasis = 0.0;
};

/// Maximal runs of iterations over which consecutive top-1 core strings stay
/// within `max_distance` (normalized LD), keeping runs of at least `min_length`
/// iterations.
[[nodiscard]] StasisAnalysis stasis_periods(std::span<const SymbolString> top1, double max_distance,
                                            std::size_t min_length);

}  // namespace evolexis
