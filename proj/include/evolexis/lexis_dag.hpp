#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "evolexis/types.hpp"

namespace evolexis {

/// Concatenation edge: S(from) appears in S(to) starting at `index` (1-based).
struct Edge {
  NodeId from;
  NodeId to;
  std::uint32_t index = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A node's string written as an ordered tiling by its in-neighbors.
using ParseForm = std::vector<NodeId>;

/// Occurrence of a string inside a host node, by 1-based character position.
struct Occurrence {
  NodeId host;
  std::size_t position = 1;
};

/// Occurrence of a token run inside a host's parse form (0-based offset).
struct TokenRun {
  NodeId host;
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Full description of one node, used to rebuild a DAG from a snapshot.
struct NodeRecord {
  NodeId id;
  NodeKind kind = NodeKind::Source;
  SymbolString str;
  ParseForm pieces;
};

struct PruneReport {
  std::vector<NodeId> removed;  // victims plus intermediates dropped at out-degree 0
  std::vector<NodeId> inlined;  // intermediates folded into their single user

  [[nodiscard]] bool empty() const { return removed.empty() && inlined.empty(); }
};

/// Directed acyclic graph of strings. Sources are the alphabet symbols,
/// targets are the supported output strings, and intermediates are reusable
/// substrings. Each non-source node stores its ParseForm; edges are derived
/// from those forms, so the edge cost is the total piece count.
///
/// Mutation is single-writer. Copies are deep and independent.
class LexisDag {
 public:
  explicit LexisDag(Alphabet alphabet);

  static LexisDag from_records(Alphabet alphabet, std::span<const NodeRecord> records);

  [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
  [[nodiscard]] NodeId source(Symbol s) const { return NodeId{s}; }

  /// Inserts a node without checking Lexis-DAG constraints. Pieces must refer
  /// to existing nodes. Intended for tests, snapshots and hand-built examples;
  /// validate_dag() reports whatever this lets through.
  NodeId insert_node(NodeKind kind, SymbolString str, ParseForm pieces);

  /// Adds a target tiled by `pieces`. Throws DuplicateTargetError if the
  /// string is already a target and InvalidOccurrenceError if the pieces do not
  /// spell the string.
  NodeId add_target(SymbolString str, ParseForm pieces);
  /// Adds a target tiled directly by sources.
  NodeId add_flat_target(SymbolString str);

  /// Materializes `s` as a new intermediate and rewires every listed
  /// occurrence to a single edge from it. Occurrences must align with piece
  /// boundaries of their hosts. The new node's ParseForm is the piece run of
  /// the first occurrence.
  NodeId add_intermediate(const SymbolString& s, std::span<const Occurrence> occurrences);
  /// Token-level form of add_intermediate used by the greedy solvers.
  NodeId add_intermediate(std::span<const TokenRun> runs);

  /// Removes target victims, then repeatedly deletes intermediates with
  /// out-degree 0 and inlines those with out-degree 1 (longest strings first)
  /// until none remain.
  PruneReport remove_targets_and_prune(std::span<const NodeId> victims);

  [[nodiscard]] bool contains(NodeId id) const;
  [[nodiscard]] NodeKind kind(NodeId id) const { return slot(id).kind; }
  [[nodiscard]] const SymbolString& str(NodeId id) const { return slot(id).str; }
  [[nodiscard]] std::size_t length(NodeId id) const { return slot(id).str.size(); }
  [[nodiscard]] const ParseForm& pieces(NodeId id) const { return slot(id).pieces; }
  [[nodiscard]] std::size_t in_degree(NodeId id) const { return slot(id).pieces.size(); }
  [[nodiscard]] std::size_t out_degree(NodeId id) const { return slot(id).out_degree; }

  /// |E|, maintained incrementally.
  [[nodiscard]] std::size_t edge_cost() const { return edge_cost_; }
  /// All edges, grouped by head node in id order, then by index.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// Live non-source nodes in increasing id order.
  [[nodiscard]] const std::vector<NodeId>& non_sources() const { return live_; }
  [[nodiscard]] std::vector<NodeId> targets() const;
  [[nodiscard]] std::vector<NodeId> intermediates() const;
  [[nodiscard]] std::vector<NodeId> all_nodes() const;
  [[nodiscard]] std::size_t target_count() const { return target_count_; }
  [[nodiscard]] std::size_t intermediate_count() const { return live_.size() - target_count_; }
  [[nodiscard]] std::size_t total_target_length() const { return target_length_; }

  [[nodiscard]] std::optional<NodeId> find_intermediate(const SymbolString& s) const;
  [[nodiscard]] std::optional<NodeId> find_target(const SymbolString& s) const;

  /// One past the largest id ever allocated; sizes dense per-node arrays.
  [[nodiscard]] std::size_t id_limit() const { return slots_.size(); }

  [[nodiscard]] std::vector<NodeRecord> records() const;

 private:
  struct Slot {
    bool alive = false;
    NodeKind kind = NodeKind::Source;
    SymbolString str;
    ParseForm pieces;
    std::size_t out_degree = 0;
  };

  [[nodiscard]] const Slot& slot(NodeId id) const;
  Slot& slot(NodeId id);
  NodeId allocate(NodeKind kind, SymbolString str, ParseForm pieces);
  void detach(NodeId id);
  void inline_into_user(NodeId id);
  [[nodiscard]] SymbolString spell(std::span<const NodeId> tokens) const;

  Alphabet alphabet_;
  std::vector<Slot> slots_;
  std::vector<NodeId> live_;
  std::unordered_map<SymbolString, NodeId, SymbolStringHash> intermediate_index_;
  std::unordered_map<SymbolString, NodeId, SymbolStringHash> target_index_;
  std::size_t edge_cost_ = 0;
  std::size_t target_count_ = 0;
  std::size_t target_length_ = 0;
};

enum class ViolationKind {
  DanglingPiece,
  SourceHasInEdges,
  TargetHasOutEdges,
  MissingParse,
  TooFewPieces,
  BadTiling,
  EdgeOrder,
  LowReuse,
  DuplicateIntermediate,
  DuplicateTarget,
  DegreeMismatch,
};

[[nodiscard]] const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  NodeId node;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

/// Checks every Lexis-DAG constraint from scratch, without trusting the
/// DAG's cached counters. An empty report means the DAG is valid.
[[nodiscard]] ValidationReport validate_dag(const LexisDag& dag);

/// Number of edges, i.e. the sum of in-degrees.
[[nodiscard]] std::size_t edge_cost(const LexisDag& dag);

/// Recursively expands a node's ParseForm down to sources.
[[nodiscard]] SymbolString expand_to_sources(const LexisDag& dag, NodeId id);

}  // namespace evolexis
