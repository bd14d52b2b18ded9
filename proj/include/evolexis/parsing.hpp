#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evolexis/lexis_dag.hpp"
#include "evolexis/types.hpp"

namespace evolexis {

/// Strings available for reuse when parsing: every source plus the current
/// intermediates, keyed by string.
class Dictionary {
 public:
  struct Entry {
    SymbolString str;
    NodeId node;
  };

  Dictionary() = default;
  /// Sources and intermediates of `dag`.
  static Dictionary from_dag(const LexisDag& dag);

  /// Adds or replaces the entry for `str`.
  void insert(SymbolString str, NodeId node);
  [[nodiscard]] const NodeId* find(const SymbolString& str) const;

  [[nodiscard]] std::span<const Entry> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::size_t max_length() const { return max_length_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<SymbolString, std::size_t, SymbolStringHash> index_;
  std::size_t max_length_ = 0;
};

/// Aho-Corasick automaton over a Dictionary. Immutable once built; queries
/// may run concurrently.
class Matcher {
 public:
  /// A dictionary entry found in a query, as [begin, begin + length).
  struct Match {
    std::size_t begin = 0;
    std::size_t length = 0;
    NodeId node;

    friend bool operator==(const Match&, const Match&) = default;
  };

  explicit Matcher(const Dictionary& dict);

  /// All dictionary entries occurring in `text`, ordered by end position and,
  /// for a shared end, from longest to shortest.
  [[nodiscard]] std::vector<Match> find_all(std::span<const Symbol> text) const;

  /// For each start position, the lengths and nodes of the entries beginning
  /// there, sorted by decreasing length.
  [[nodiscard]] std::vector<std::vector<std::pair<std::size_t, NodeId>>> starts(
      std::span<const Symbol> text) const;

  [[nodiscard]] std::size_t state_count() const { return states_.size(); }

 private:
  struct State {
    std::vector<std::pair<Symbol, std::int32_t>> next;  // sorted by symbol
    std::int32_t fail = 0;
    std::int32_t output_link = -1;  // nearest proper suffix state carrying an entry
    std::int32_t entry = -1;        // dictionary entry ending exactly here
    std::uint32_t depth = 0;
  };

  [[nodiscard]] std::int32_t child(std::int32_t state, Symbol s) const;
  [[nodiscard]] std::int32_t step(std::int32_t state, Symbol s) const;

  std::vector<State> states_;
  std::vector<NodeId> entry_nodes_;
  std::vector<std::uint32_t> entry_lengths_;
};

Matcher build_matcher(const Dictionary& dict);

struct Parse {
  std::vector<NodeId> pieces;
  std::size_t cost = 0;  // == pieces.size()
};

/// Minimum-piece tiling of `t` by dictionary entries, solved as a shortest
/// path over string positions. Among equal-cost tilings the leftmost-longest
/// one is returned. The dictionary must contain every symbol used in `t`.
[[nodiscard]] Parse optimal_parse(std::span<const Symbol> t, const Matcher& matcher);
[[nodiscard]] Parse optimal_parse(std::span<const Symbol> t, const Dictionary& dict);

}  // namespace evolexis
