#include "evolexis/inclexis.hpp"

#include <unordered_set>

#include "evolexis/errors.hpp"

namespace evolexis {

std::vector<NodeId> ExpansionReport::new_intermediates() const {
  std::vector<NodeId> out;
  out.reserve(stage2.size());
  for (const GlexisStep& s : stage2) out.push_back(s.node);
  return out;
}

ExpansionReport expand(LexisDag& dag, std::span<const SymbolString> new_targets,
                       const ExpandOptions& options) {
  ExpansionReport report;
  if (new_targets.empty()) return report;

  std::unordered_set<SymbolString, SymbolStringHash> batch;
  for (const SymbolString& t : new_targets) {
    if (dag.find_target(t) || !batch.insert(t).second) {
      throw DuplicateTargetError("new target duplicates an existing or pending target");
    }
    if (t.empty() || !dag.alphabet().contains(t)) {
      throw LexisError("new target is empty or uses symbols outside the alphabet");
    }
  }

  const Matcher matcher(Dictionary::from_dag(dag));
  for (const SymbolString& t : new_targets) {
    Parse parse = optimal_parse(t, matcher);
    report.stage1_cost += parse.cost;
    report.targets.push_back(dag.add_target(t, parse.pieces));
    report.stage1.push_back(std::move(parse));
  }

  if (options.run_stage2) {
    report.stage2 = glexis_compress(dag, report.targets, options.glexis);
    for (const GlexisStep& s : report.stage2) report.stage2_saving += s.chosen.saving;
  }
  return report;
}

std::size_t marginal_cost(const LexisDag& dag, std::span<const Symbol> t) {
  return optimal_parse(t, Dictionary::from_dag(dag)).cost;
}

std::size_t marginal_cost_committed(const LexisDag& dag, const SymbolString& t) {
  LexisDag copy = dag;
  const std::size_t before = copy.edge_cost();
  if (auto existing = copy.find_target(t)) {
    // A duplicate would be rejected by generation anyway; cost it as a reparse.
    return copy.in_degree(*existing);
  }
  expand(copy, std::span(&t, 1));
  return copy.edge_cost() - before;
}

CostModel::CostModel(const LexisDag& dag, Mode mode)
    : dag_(dag), mode_(mode), dict_(Dictionary::from_dag(dag)),
      matcher_(std::make_unique<Matcher>(dict_)) {}

std::size_t CostModel::marginal_cost(const SymbolString& t) const {
  if (mode_ == Mode::Committed) return marginal_cost_committed(dag_, t);
  return optimal_parse(t, *matcher_).cost;
}

IncrementalReport incremental_step(LexisDag& dag, std::span<const SymbolString> additions,
                                   std::span<const NodeId> removals,
                                   const ExpandOptions& options) {
  for (NodeId v : removals) {
    if (!dag.contains(v) || dag.kind(v) != NodeKind::Target) {
      throw NotATargetError("node " + std::to_string(v.value) + " is not a target");
    }
  }
  IncrementalReport report;
  report.expansion = expand(dag, additions, options);
  report.pruning = dag.remove_targets_and_prune(removals);
  return report;
}

}  // namespace evolexis
