// Brute-force reference implementations for the unit and acceptance tests.
// Deliberately naive: quadratic scans and explicit enumeration only.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "evolexis/glexis.hpp"
#include "evolexis/lexis_dag.hpp"
#include "evolexis/rng.hpp"

namespace oracle {

using namespace evolexis;

inline SymbolString random_string(Rng& rng, std::uint32_t n, std::size_t len) {
  SymbolString s(len);
  for (Symbol& c : s) c = static_cast<Symbol>(rng.below(n));
  return s;
}

/// Strings over a small alphabet with planted repeats, so that the greedy
/// has something to find.
inline std::vector<SymbolString> planted_targets(Rng& rng, std::uint32_t n, std::size_t count,
                                                 std::size_t len) {
  std::vector<SymbolString> motifs;
  for (int i = 0; i < 3; ++i) motifs.push_back(random_string(rng, n, 2 + rng.below(4)));
  std::vector<SymbolString> out;
  std::set<SymbolString> seen;
  while (out.size() < count) {
    SymbolString t;
    while (t.size() < len) {
      if (rng.below(2) == 0) {
        const SymbolString& m = motifs[rng.below(motifs.size())];
        t.insert(t.end(), m.begin(), m.end());
      } else {
        t.push_back(static_cast<Symbol>(rng.below(n)));
      }
    }
    t.resize(len);
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

/// Minimum pieces to tile t with dictionary strings; nullopt if impossible.
inline std::optional<std::size_t> parse_cost(std::span<const Symbol> t,
                                             const std::vector<SymbolString>& dict) {
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(t.size() + 1, inf);
  best[0] = 0;
  for (std::size_t end = 1; end <= t.size(); ++end) {
    for (std::size_t begin = 0; begin < end; ++begin) {
      if (best[begin] == inf) continue;
      for (const SymbolString& w : dict) {
        if (w.size() == end - begin && std::equal(w.begin(), w.end(), t.begin() + begin)) {
          best[end] = std::min(best[end], best[begin] + 1);
        }
      }
    }
  }
  if (best[t.size()] == inf) return std::nullopt;
  return best[t.size()];
}

/// Every (begin, length, entry index) where a dictionary string occurs in t.
inline std::set<std::tuple<std::size_t, std::size_t, std::size_t>> occurrences(
    std::span<const Symbol> t, const std::vector<SymbolString>& dict) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const SymbolString& w = dict[i];
    if (w.empty() || w.size() > t.size()) continue;
    for (std::size_t b = 0; b + w.size() <= t.size(); ++b) {
      if (std::equal(w.begin(), w.end(), t.begin() + b)) out.emplace(b, w.size(), i);
    }
  }
  return out;
}

struct PathCensus {
  std::uint64_t total = 0;
  std::map<NodeId, std::uint64_t> through;  // paths visiting each node
};

/// Walks every source-to-target path explicitly (one per edge sequence),
/// skipping paths that touch a removed node.
inline PathCensus enumerate_paths(const LexisDag& dag, const std::set<NodeId>& removed = {}) {
  PathCensus census;
  std::vector<NodeId> stack;
  auto walk = [&](auto&& self, NodeId v) -> void {
    if (removed.count(v)) return;
    stack.push_back(v);
    if (dag.kind(v) == NodeKind::Source) {
      ++census.total;
      for (NodeId u : stack) ++census.through[u];
    } else {
      for (NodeId p : dag.pieces(v)) self(self, p);
    }
    stack.pop_back();
  };
  for (NodeId t : dag.targets()) walk(walk, t);
  return census;
}

/// Non-overlapping greedy left-to-right count of `needle` in `hay`.
inline std::size_t count_greedy(const std::vector<NodeId>& hay, const std::vector<NodeId>& needle) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + needle.size() <= hay.size()) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++count;
      i += needle.size();
    } else {
      ++i;
    }
  }
  return count;
}

/// Largest repeat saving over every token substring of the hosts' parse
/// forms; nullopt when no substring occurs twice.
inline std::optional<std::int64_t> best_saving(const LexisDag& dag,
                                               const std::vector<NodeId>& hosts) {
  std::set<std::vector<NodeId>> seen;
  std::optional<std::int64_t> best;
  for (NodeId h : hosts) {
    const ParseForm& form = dag.pieces(h);
    for (std::size_t b = 0; b < form.size(); ++b) {
      for (std::size_t e = b + 2; e <= form.size(); ++e) {
        std::vector<NodeId> tokens(form.begin() + static_cast<std::ptrdiff_t>(b),
                                   form.begin() + static_cast<std::ptrdiff_t>(e));
        if (!seen.insert(tokens).second) continue;
        std::size_t f = 0;
        for (NodeId g : hosts) f += count_greedy(dag.pieces(g), tokens);
        if (f < 2) continue;
        SymbolString s;
        for (NodeId t : tokens) s.insert(s.end(), dag.str(t).begin(), dag.str(t).end());
        if (dag.find_intermediate(s)) continue;
        const std::int64_t saving = static_cast<std::int64_t>(f) *
                                        (static_cast<std::int64_t>(tokens.size()) - 1) -
                                    static_cast<std::int64_t>(tokens.size());
        if (!best || saving > *best) best = saving;
      }
    }
  }
  return best;
}

inline std::size_t edit_distance(const SymbolString& a, const SymbolString& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

/// Mean path length per target by enumeration, averaged over targets.
inline double depth_by_enumeration(const LexisDag& dag) {
  double sum = 0.0;
  for (NodeId t : dag.targets()) {
    std::uint64_t paths = 0;
    std::uint64_t length = 0;
    auto walk = [&](auto&& self, NodeId v, std::uint64_t depth) -> void {
      if (dag.kind(v) == NodeKind::Source) {
        ++paths;
        length += depth;
        return;
      }
      for (NodeId p : dag.pieces(v)) self(self, p, depth + 1);
    };
    walk(walk, t, 0);
    sum += static_cast<double>(length) / static_cast<double>(paths);
  }
  return sum / static_cast<double>(dag.target_count());
}

}  // namespace oracle
