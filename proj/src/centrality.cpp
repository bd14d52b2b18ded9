#include "evolexis/centrality.hpp"

#include <algorithm>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

// Non-source nodes ordered so that every piece precedes its users: shorter
// strings first, and a single-piece target after the intermediate it copies.
std::vector<NodeId> topological_order(const LexisDag& dag) {
  std::vector<NodeId> order = dag.non_sources();
  std::stable_sort(order.begin(), order.end(), [&dag](NodeId a, NodeId b) {
    if (dag.length(a) != dag.length(b)) return dag.length(a) < dag.length(b);
    return dag.kind(a) != NodeKind::Target && dag.kind(b) == NodeKind::Target;
  });
  return order;
}

bool is_removed(const std::vector<bool>& removed, NodeId id) {
  return id.value < removed.size() && removed[id.value];
}

bool within_threshold(std::uint64_t remaining, std::uint64_t total, double tau) {
  return static_cast<double>(remaining) <= tau * static_cast<double>(total) + 1e-9;
}

PathCounts count_paths_ordered(const LexisDag& dag, const std::vector<NodeId>& order,
                               const std::vector<bool>& removed);

}  // namespace

double CoreSet::covered_fraction() const {
  if (total_paths == 0) return 0.0;
  return 1.0 - static_cast<double>(remaining_paths) / static_cast<double>(total_paths);
}

PathCounts count_paths(const LexisDag& dag, const std::vector<bool>& removed) {
  return count_paths_ordered(dag, topological_order(dag), removed);
}

namespace {

PathCounts count_paths_ordered(const LexisDag& dag, const std::vector<NodeId>& order,
                               const std::vector<bool>& removed) {
  PathCounts counts;
  counts.from_sources.assign(dag.id_limit(), 0);
  counts.to_targets.assign(dag.id_limit(), 0);
  for (Symbol s = 0; s < dag.alphabet().size; ++s) {
    if (!is_removed(removed, dag.source(s))) counts.from_sources[s] = 1;
  }
  for (NodeId v : order) {
    if (is_removed(removed, v)) continue;
    std::uint64_t sum = 0;
    for (NodeId p : dag.pieces(v)) sum += counts.from_sources[p.value];
    counts.from_sources[v.value] = sum;
    if (dag.kind(v) == NodeKind::Target) {
      counts.total += sum;
      counts.to_targets[v.value] = 1;
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (is_removed(removed, v)) continue;
    const std::uint64_t down = counts.to_targets[v.value];
    if (down == 0) continue;
    for (NodeId p : dag.pieces(v)) {
      if (!is_removed(removed, p)) counts.to_targets[p.value] += down;
    }
  }
  return counts;
}

}  // namespace

std::map<NodeId, std::uint64_t> path_centrality(const LexisDag& dag) {
  const PathCounts counts = count_paths(dag);
  std::map<NodeId, std::uint64_t> out;
  for (NodeId v : dag.non_sources()) {
    if (dag.kind(v) == NodeKind::Intermediate) {
      out.emplace(v, counts.from_sources[v.value] * counts.to_targets[v.value]);
    }
  }
  return out;
}

CoreSet g_core(const LexisDag& dag, const CoreOptions& options) {
  CoreSet core;
  core.tau = options.tau;
  std::vector<bool> removed(dag.id_limit(), false);

  std::vector<NodeId> candidates = dag.intermediates();
  if (options.candidates == CoreCandidates::IntermediatesAndSources) {
    for (Symbol s = 0; s < dag.alphabet().size; ++s) candidates.push_back(dag.source(s));
  }

  const std::vector<NodeId> order = topological_order(dag);
  PathCounts counts = count_paths_ordered(dag, order, removed);
  core.total_paths = counts.total;
  while (!within_threshold(counts.total, core.total_paths, options.tau)) {
    NodeId pick{};
    std::uint64_t pick_paths = 0;
    for (NodeId v : candidates) {
      if (removed[v.value]) continue;
      const std::uint64_t paths = counts.from_sources[v.value] * counts.to_targets[v.value];
      if (paths == 0) continue;
      const bool better =
          pick_paths == 0 || paths > pick_paths ||
          (paths == pick_paths && (dag.length(v) > dag.length(pick) ||
                                   (dag.length(v) == dag.length(pick) && v < pick)));
      if (better) {
        pick = v;
        pick_paths = paths;
      }
    }
    if (pick_paths == 0) {
      core.reached = false;
      break;
    }
    removed[pick.value] = true;
    core.members.push_back(pick);
    core.centrality.push_back(pick_paths);
    counts = count_paths_ordered(dag, order, removed);
  }
  core.remaining_paths = counts.total;
  return core;
}

CoreSet flat_core(const LexisDag& dag, double tau) {
  const std::vector<NodeId> targets = dag.targets();
  const std::size_t n = dag.alphabet().size;
  // uses[t * n + s]: occurrences of symbol s in target t.
  std::vector<std::uint64_t> uses(targets.size() * n, 0);
  std::vector<std::uint64_t> target_cover(targets.size(), 0);
  std::vector<std::uint64_t> source_cover(n, 0);
  std::uint64_t remaining = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (Symbol s : dag.str(targets[t])) {
      uses[t * n + s] += 1;
      target_cover[t] += 1;
      source_cover[s] += 1;
      remaining += 1;
    }
  }

  CoreSet core;
  core.tau = tau;
  core.total_paths = remaining;
  std::vector<bool> target_gone(targets.size(), false);
  std::vector<bool> source_gone(n, false);
  while (!within_threshold(remaining, core.total_paths, tau)) {
    // Candidates in stable node order: sources (ids 0..n-1), then targets.
    // Ties prefer the longer string, which puts targets ahead of sources.
    std::uint64_t best = 0;
    bool best_is_target = false;
    std::size_t best_index = 0;
    auto consider = [&](std::uint64_t cover, bool is_target, std::size_t index) {
      if (cover == 0) return;
      const std::size_t len = is_target ? dag.length(targets[index]) : 1;
      const std::size_t best_len =
          best == 0 ? 0 : (best_is_target ? dag.length(targets[best_index]) : 1);
      if (best == 0 || cover > best || (cover == best && len > best_len)) {
        best = cover;
        best_is_target = is_target;
        best_index = index;
      }
    };
    for (std::size_t s = 0; s < n; ++s) {
      if (!source_gone[s]) consider(source_cover[s], false, s);
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!target_gone[t]) consider(target_cover[t], true, t);
    }
    if (best == 0) {
      core.reached = false;
      break;
    }
    remaining -= best;
    core.centrality.push_back(best);
    if (best_is_target) {
      target_gone[best_index] = true;
      core.members.push_back(targets[best_index]);
      for (std::size_t s = 0; s < n; ++s) {
        if (!source_gone[s]) source_cover[s] -= uses[best_index * n + s];
      }
      target_cover[best_index] = 0;
    } else {
      source_gone[best_index] = true;
      core.members.push_back(dag.source(static_cast<Symbol>(best_index)));
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!target_gone[t]) target_cover[t] -= uses[t * n + best_index];
      }
      source_cover[best_index] = 0;
    }
  }
  core.remaining_paths = remaining;
  return core;
}

double h_score_value(const LexisDag& dag, const CoreSet& core, const CoreSet& flat) {
  if (dag.intermediate_count() == 0) return 0.0;
  if (flat.size() == 0) {
    throw DegenerateError("flat core is empty; H-score undefined at tau = " +
                          std::to_string(flat.tau));
  }
  const double ratio = static_cast<double>(core.size()) / static_cast<double>(flat.size());
  return std::clamp(1.0 - ratio, 0.0, 1.0);
}

HScore h_score(const LexisDag& dag, const CoreOptions& options) {
  HScore out;
  out.flat = flat_core(dag, options.tau);
  out.core = g_core(dag, options);
  out.value = h_score_value(dag, out.core, out.flat);
  return out;
}

std::vector<std::pair<std::size_t, double>> robustness_curve(const LexisDag& dag,
                                                             const CoreSet& core) {
  std::vector<std::pair<std::size_t, double>> curve;
  const std::vector<NodeId> order = topological_order(dag);
  std::vector<bool> removed(dag.id_limit(), false);
  const std::uint64_t total = count_paths_ordered(dag, order, removed).total;
  for (std::size_t j = 0; j <= core.members.size(); ++j) {
    if (j > 0) removed[core.members[j - 1].value] = true;
    const std::uint64_t left = count_paths_ordered(dag, order, removed).total;
    curve.emplace_back(j, total == 0 ? 0.0 : static_cast<double>(left) / static_cast<double>(total));
  }
  return curve;
}

}  // namespace evolexis
