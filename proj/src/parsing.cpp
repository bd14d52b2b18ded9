#include "evolexis/parsing.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "evolexis/errors.hpp"

namespace evolexis {

Dictionary Dictionary::from_dag(const LexisDag& dag) {
  Dictionary dict;
  for (Symbol s = 0; s < dag.alphabet().size; ++s) dict.insert({s}, dag.source(s));
  for (NodeId id : dag.non_sources()) {
    if (dag.kind(id) == NodeKind::Intermediate) dict.insert(dag.str(id), id);
  }
  return dict;
}

void Dictionary::insert(SymbolString str, NodeId node) {
  if (str.empty()) throw LexisError("dictionary entries must be non-empty");
  if (auto it = index_.find(str); it != index_.end()) {
    entries_[it->second].node = node;
    return;
  }
  max_length_ = std::max(max_length_, str.size());
  index_.emplace(str, entries_.size());
  entries_.push_back(Entry{std::move(str), node});
}

const NodeId* Dictionary::find(const SymbolString& str) const {
  auto it = index_.find(str);
  return it == index_.end() ? nullptr : &entries_[it->second].node;
}

Matcher::Matcher(const Dictionary& dict) {
  states_.emplace_back();
  for (const Dictionary::Entry& entry : dict.entries()) {
    std::int32_t cur = 0;
    for (Symbol s : entry.str) {
      std::int32_t nxt = child(cur, s);
      if (nxt < 0) {
        nxt = static_cast<std::int32_t>(states_.size());
        State fresh;
        fresh.depth = states_[cur].depth + 1;
        states_.push_back(std::move(fresh));
        auto& edges = states_[cur].next;
        edges.insert(std::lower_bound(edges.begin(), edges.end(), std::pair{s, INT32_MIN}),
                     {s, nxt});
      }
      cur = nxt;
    }
    states_[cur].entry = static_cast<std::int32_t>(entry_nodes_.size());
    entry_nodes_.push_back(entry.node);
    entry_lengths_.push_back(static_cast<std::uint32_t>(entry.str.size()));
  }

  // Breadth-first failure links.
  std::deque<std::int32_t> queue;
  for (auto [sym, c] : states_[0].next) {
    states_[c].fail = 0;
    queue.push_back(c);
  }
  while (!queue.empty()) {
    const std::int32_t cur = queue.front();
    queue.pop_front();
    for (auto [sym, c] : states_[cur].next) {
      std::int32_t f = states_[cur].fail;
      while (f != 0 && child(f, sym) < 0) f = states_[f].fail;
      const std::int32_t target = child(f, sym);
      states_[c].fail = (target >= 0 && target != c) ? target : 0;
      const State& fs = states_[states_[c].fail];
      states_[c].output_link = fs.entry >= 0 ? states_[c].fail : fs.output_link;
      queue.push_back(c);
    }
  }
}

std::int32_t Matcher::child(std::int32_t state, Symbol s) const {
  const auto& edges = states_[state].next;
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{s, INT32_MIN});
  return (it != edges.end() && it->first == s) ? it->second : -1;
}

std::int32_t Matcher::step(std::int32_t state, Symbol s) const {
  while (true) {
    const std::int32_t c = child(state, s);
    if (c >= 0) return c;
    if (state == 0) return 0;
    state = states_[state].fail;
  }
}

std::vector<Matcher::Match> Matcher::find_all(std::span<const Symbol> text) const {
  std::vector<Match> out;
  std::int32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = step(state, text[i]);
    // States along the output chain have strictly decreasing depth.
    for (std::int32_t s = states_[state].entry >= 0 ? state : states_[state].output_link; s >= 0;
         s = states_[s].output_link) {
      const auto e = static_cast<std::size_t>(states_[s].entry);
      out.push_back(Match{i + 1 - entry_lengths_[e], entry_lengths_[e], entry_nodes_[e]});
    }
  }
  return out;
}

std::vector<std::vector<std::pair<std::size_t, NodeId>>> Matcher::starts(
    std::span<const Symbol> text) const {
  std::vector<std::vector<std::pair<std::size_t, NodeId>>> by_start(text.size());
  for (const Match& m : find_all(text)) by_start[m.begin].emplace_back(m.length, m.node);
  for (auto& list : by_start) {
    std::sort(list.begin(), list.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
  }
  return by_start;
}

Matcher build_matcher(const Dictionary& dict) { return Matcher(dict); }

Parse optimal_parse(std::span<const Symbol> t, const Matcher& matcher) {
  const std::size_t n = t.size();
  const auto by_start = matcher.starts(t);
  constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

  // remaining[i]: fewest pieces tiling t[i..n).
  std::vector<std::size_t> remaining(n + 1, kUnreachable);
  remaining[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (const auto& [len, node] : by_start[i]) {
      if (remaining[i + len] != kUnreachable) {
        remaining[i] = std::min(remaining[i], remaining[i + len] + 1);
      }
    }
  }
  if (remaining[0] == kUnreachable) {
    throw LexisError("string cannot be tiled by the dictionary; a source symbol is missing");
  }

  Parse parse;
  parse.cost = remaining[0];
  parse.pieces.reserve(parse.cost);
  std::size_t i = 0;
  while (i < n) {
    // Candidates are longest-first, so the first one on a shortest path wins.
    for (const auto& [len, node] : by_start[i]) {
      if (remaining[i + len] != kUnreachable && remaining[i + len] + 1 == remaining[i]) {
        parse.pieces.push_back(node);
        i += len;
        break;
      }
    }
  }
  return parse;
}

Parse optimal_parse(std::span<const Symbol> t, const Dictionary& dict) {
  return optimal_parse(t, Matcher(dict));
}

}  // namespace evolexis
