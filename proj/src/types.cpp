#include "evolexis/types.hpp"

#include <algorithm>
#include <sstream>

#include "evolexis/errors.hpp"

namespace evolexis {

bool Alphabet::contains(const SymbolString& str) const {
  return std::all_of(str.begin(), str.end(), [this](Symbol s) { return contains(s); });
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Source: return "source";
    case NodeKind::Intermediate: return "intermediate";
    case NodeKind::Target: return "target";
  }
  return "unknown";
}

std::size_t SymbolStringHash::operator()(const SymbolString& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
  for (Symbol sym : s) {
    h ^= sym;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

SymbolTable::SymbolTable(std::vector<std::string> glyphs) : glyphs_(std::move(glyphs)) {
  compact_ = std::all_of(glyphs_.begin(), glyphs_.end(),
                         [](const std::string& g) { return g.size() == 1; });
}

SymbolTable SymbolTable::for_alphabet(const Alphabet& alphabet) {
  static constexpr char kCompact[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::vector<std::string> glyphs;
  glyphs.reserve(alphabet.size);
  if (alphabet.size <= sizeof(kCompact) - 1) {
    for (std::uint32_t i = 0; i < alphabet.size; ++i) glyphs.emplace_back(1, kCompact[i]);
  } else {
    for (std::uint32_t i = 0; i < alphabet.size; ++i) glyphs.push_back(std::to_string(i));
  }
  return SymbolTable(std::move(glyphs));
}

SymbolTable SymbolTable::digits() {
  std::vector<std::string> glyphs;
  for (char c = '0'; c <= '9'; ++c) glyphs.emplace_back(1, c);
  return SymbolTable(std::move(glyphs));
}

std::string SymbolTable::render(const SymbolString& s) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!compact_ && i > 0) out += '.';
    if (s[i] < glyphs_.size()) {
      out += glyphs_[s[i]];
    } else {
      out += '#' + std::to_string(s[i]);
    }
  }
  return out;
}

SymbolString SymbolTable::parse(const std::string& text) const {
  SymbolString out;
  auto lookup = [this](const std::string& glyph) {
    auto it = std::find(glyphs_.begin(), glyphs_.end(), glyph);
    if (it == glyphs_.end()) throw LexisError("unknown symbol '" + glyph + "'");
    return static_cast<Symbol>(it - glyphs_.begin());
  };
  if (compact_) {
    for (char c : text) out.push_back(lookup(std::string(1, c)));
  } else {
    std::istringstream in(text);
    std::string glyph;
    while (std::getline(in, glyph, '.')) out.push_back(lookup(glyph));
  }
  return out;
}

}  // namespace evolexis
