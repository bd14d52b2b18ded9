#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "evolexis/glexis.hpp"
#include "evolexis/lexis_dag.hpp"
#include "evolexis/parsing.hpp"

namespace evolexis {

struct ExpansionReport {
  std::vector<NodeId> targets;           // new target nodes, in input order
  std::vector<Parse> stage1;             // stage-1 parse of each new target
  std::vector<GlexisStep> stage2;        // intermediates added over the new targets
  std::size_t stage1_cost = 0;           // sum of stage-1 parse costs
  std::int64_t stage2_saving = 0;        // sum of stage-2 savings

  [[nodiscard]] std::vector<NodeId> new_intermediates() const;
};

struct ExpandOptions {
  bool run_stage2 = true;
  GlexisOptions glexis;
};

/// Expansion phase. Stage 1 attaches each new target through its optimal
/// parse over the current sources and intermediates; stage 2 runs the greedy
/// compression over the new targets' parse forms only. Existing nodes only
/// ever gain out-edges. Throws DuplicateTargetError if a new string repeats
/// an existing target or another member of the batch.
ExpansionReport expand(LexisDag& dag, std::span<const SymbolString> new_targets,
                       const ExpandOptions& options = {});

/// Parse-only marginal cost of adding `t`: its optimal piece count over the
/// current dictionary. The DAG is not modified.
[[nodiscard]] std::size_t marginal_cost(const LexisDag& dag, std::span<const Symbol> t);

/// Marginal cost including stage-2 compression, measured by expanding a copy.
[[nodiscard]] std::size_t marginal_cost_committed(const LexisDag& dag, const SymbolString& t);

/// Read-only costing context for one batch: dictionary and matcher are built
/// once and reused for every candidate.
class CostModel {
 public:
  enum class Mode { ParseOnly, Committed };

  explicit CostModel(const LexisDag& dag, Mode mode = Mode::ParseOnly);

  [[nodiscard]] std::size_t marginal_cost(const SymbolString& t) const;
  [[nodiscard]] const LexisDag& dag() const { return dag_; }

 private:
  const LexisDag& dag_;
  Mode mode_;
  Dictionary dict_;
  std::unique_ptr<Matcher> matcher_;
};

struct IncrementalReport {
  ExpansionReport expansion;
  PruneReport pruning;
};

/// Expands with `additions`, then removes `removals` (existing target ids)
/// and prunes under-used intermediates.
IncrementalReport incremental_step(LexisDag& dag, std::span<const SymbolString> additions,
                                   std::span<const NodeId> removals,
                                   const ExpandOptions& options = {});

}  // namespace evolexis
