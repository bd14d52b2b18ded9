#include "evolexis/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

std::size_t levenshtein_rows(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Bit-parallel edit distance for a pattern of at most 64 symbols.
std::size_t levenshtein_bits(std::span<const Symbol> pattern, std::span<const Symbol> text) {
  const std::size_t m = pattern.size();
  Symbol top = 0;
  for (Symbol s : pattern) top = std::max(top, s);
  std::vector<std::uint64_t> peq(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t i = 0; i < m; ++i) peq[pattern[i]] |= std::uint64_t{1} << i;

  const std::uint64_t last = std::uint64_t{1} << (m - 1);
  std::uint64_t pv = ~std::uint64_t{0};
  std::uint64_t mv = 0;
  std::size_t score = m;
  for (Symbol c : text) {
    const std::uint64_t eq = c <= top ? peq[c] : 0;
    const std::uint64_t xv = eq | mv;
    const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
    std::uint64_t ph = mv | ~(xh | pv);
    std::uint64_t mh = pv & xh;
    if (ph & last) {
      ++score;
    } else if (mh & last) {
      --score;
    }
    ph = (ph << 1) | 1;
    mh <<= 1;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
  }
  return score;
}

}  // namespace

double normalized_cost(const LexisDag& dag) {
  if (dag.total_target_length() == 0) throw LexisError("normalized cost needs at least one target");
  return static_cast<double>(dag.edge_cost()) / static_cast<double>(dag.total_target_length());
}

double pid(const LexisDag& inc, const LexisDag& clean) {
  if (clean.edge_cost() == 0) throw LexisError("clean-slate DAG has no edges");
  return static_cast<double>(inc.edge_cost()) / static_cast<double>(clean.edge_cost());
}

LexisDag clean_slate(const LexisDag& dag, const GlexisOptions& options) {
  std::vector<SymbolString> strings;
  for (NodeId t : dag.targets()) strings.push_back(dag.str(t));
  return glexis_build(dag.alphabet(), strings, options);
}

double pid(const LexisDag& inc, const GlexisOptions& options) {
  return pid(inc, clean_slate(inc, options));
}

double avg_depth(const LexisDag& dag) {
  // Per node: number of source paths reaching it and the summed path lengths.
  std::vector<NodeId> order = dag.non_sources();
  std::stable_sort(order.begin(), order.end(), [&dag](NodeId a, NodeId b) {
    if (dag.length(a) != dag.length(b)) return dag.length(a) < dag.length(b);
    return dag.kind(a) != NodeKind::Target && dag.kind(b) == NodeKind::Target;
  });
  std::vector<std::uint64_t> paths(dag.id_limit(), 0);
  std::vector<std::uint64_t> lengths(dag.id_limit(), 0);
  for (Symbol s = 0; s < dag.alphabet().size; ++s) paths[s] = 1;

  double total = 0.0;
  std::size_t targets = 0;
  for (NodeId v : order) {
    std::uint64_t p = 0;
    std::uint64_t l = 0;
    for (NodeId u : dag.pieces(v)) {
      p += paths[u.value];
      l += lengths[u.value] + paths[u.value];
    }
    paths[v.value] = p;
    lengths[v.value] = l;
    if (dag.kind(v) == NodeKind::Target && p > 0) {
      total += static_cast<double>(l) / static_cast<double>(p);
      ++targets;
    }
  }
  return targets == 0 ? 0.0 : total / static_cast<double>(targets);
}

double avg_node_length(const LexisDag& dag) {
  std::size_t count = 0;
  std::size_t sum = 0;
  for (NodeId v : dag.non_sources()) {
    if (dag.kind(v) != NodeKind::Intermediate) continue;
    sum += dag.length(v);
    ++count;
  }
  return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count);
}

std::size_t single_piece_targets(const LexisDag& dag) {
  std::size_t count = 0;
  for (NodeId v : dag.non_sources()) {
    if (dag.kind(v) == NodeKind::Target && dag.in_degree(v) == 1) ++count;
  }
  return count;
}

std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  if (a.size() <= 64) return levenshtein_bits(a, b);
  if (b.size() <= 64) return levenshtein_bits(b, a);
  return levenshtein_rows(a, b);
}

double normalized_distance(std::span<const Symbol> a, std::span<const Symbol> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double similarity(std::span<const Symbol> a, std::span<const Symbol> b) {
  return 1.0 - normalized_distance(a, b);
}

double lev_jaccard(std::span<const SymbolString> a, std::span<const SymbolString> b) {
  if (a.empty() || b.empty()) throw LexisError("lev_jaccard needs two non-empty sets");
  std::vector<double> sim(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) sim[i * b.size() + j] = similarity(a[i], b[j]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) best = std::max(best, sim[i * b.size() + j]);
    sum += best;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, sim[i * b.size() + j]);
    sum += best;
  }
  return sum / static_cast<double>(a.size() + b.size());
}

DiversityResult diversity_with_medoid(std::span<const SymbolString> strings) {
  if (strings.empty()) throw LexisError("diversity needs at least one string");
  const std::size_t n = strings.size();
  std::vector<std::size_t> totals(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = levenshtein(strings[i], strings[j]);
      totals[i] += d;
      totals[j] += d;
    }
  }
  DiversityResult out;
  out.medoid = static_cast<std::size_t>(std::min_element(totals.begin(), totals.end()) -
                                        totals.begin());
  out.value = static_cast<double>(totals[out.medoid]) / static_cast<double>(n);
  return out;
}

double diversity(std::span<const SymbolString> strings) {
  return diversity_with_medoid(strings).value;
}

std::vector<std::optional<double>> core_stability(
    std::span<const std::vector<SymbolString>> history, std::size_t window) {
  std::vector<std::optional<double>> out(history.size());
  if (window == 0) return out;
  for (std::size_t i = window; i < history.size(); ++i) {
    const auto& now = history[i];
    const auto& then = history[i - window];
    if (!now.empty() && !then.empty()) out[i] = lev_jaccard(now, then);
  }
  return out;
}

StasisAnalysis stasis_periods(std::span<const SymbolString> top1, double max_distance,
                              std::size_t min_length) {
  StasisAnalysis out;
  const std::size_t n = top1.size();
  out.step_distance.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) out.step_distance[i] = normalized_distance(top1[i - 1], top1[i]);

  // A run of steps i..j with small distance spans iterations i-1..j.
  std::size_t i = 1;
  while (i < n) {
    if (out.step_distance[i] > max_distance) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && out.step_distance[j + 1] <= max_distance) ++j;
    const StasisPeriod period{i - 1, j};
    if (period.length() >= min_length) out.periods.push_back(period);
    i = j + 1;
  }
  if (n == 1 && min_length <= 1) out.periods.push_back(StasisPeriod{0, 0});

  std::size_t covered = 0;
  for (const StasisPeriod& p : out.periods) covered += p.length();
  out.fraction_in_stasis = n == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(n);

  for (std::size_t p = 0; p < out.periods.size(); ++p) {
    std::vector<double> row;
    for (std::size_t q = p + 1; q < out.periods.size(); ++q) {
      row.push_back(normalized_distance(top1[out.periods[p].start], top1[out.periods[q].start]));
    }
    out.cross_distances.push_back(std::move(row));
  }
  return out;
}

}  // namespace evolexis
