#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace evolexis {

using Symbol = std::uint32_t;

/// Ordered sequence of alphabet symbols. Targets, intermediates and sources
/// all carry one.
using SymbolString = std::vector<Symbol>;

struct Alphabet {
  std::uint32_t size = 2;

  [[nodiscard]] bool contains(Symbol s) const { return s < size; }
  [[nodiscard]] bool contains(const SymbolString& str) const;
};

/// Stable node handle. Sources occupy ids 0..n-1; ids are never reused.
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

enum class NodeKind : std::uint8_t { Source, Intermediate, Target };

[[nodiscard]] const char* to_string(NodeKind kind);

/// Hash for symbol strings, used by the string -> node indexes.
struct SymbolStringHash {
  std::size_t operator()(const SymbolString& s) const noexcept;
};

/// Maps symbols to printable text. Small alphabets render one character per
/// symbol (a, b, c, ...); larger ones fall back to dot-separated integers.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> glyphs);

  static SymbolTable for_alphabet(const Alphabet& alphabet);
  /// Digits 0-9 rendered as themselves, for small worked examples.
  static SymbolTable digits();

  [[nodiscard]] std::string render(const SymbolString& s) const;
  [[nodiscard]] SymbolString parse(const std::string& text) const;

 private:
  std::vector<std::string> glyphs_;
  bool compact_ = true;
};

}  // namespace evolexis

template <>
struct std::hash<evolexis::NodeId> {
  std::size_t operator()(evolexis::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
