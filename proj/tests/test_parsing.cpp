#include <doctest.h>

#include "evolexis/errors.hpp"
#include "evolexis/parsing.hpp"
#include "oracles.hpp"

using namespace evolexis;

namespace {

Dictionary make_dict(std::uint32_t n, const std::vector<SymbolString>& words) {
  Dictionary dict;
  for (Symbol s = 0; s < n; ++s) dict.insert(SymbolString{s}, NodeId{s});
  std::uint32_t next = n;
  for (const SymbolString& w : words) dict.insert(w, NodeId{next++});
  return dict;
}

std::vector<SymbolString> strings_of(const Dictionary& dict) {
  std::vector<SymbolString> out;
  for (const auto& e : dict.entries()) out.push_back(e.str);
  return out;
}

}  // namespace

TEST_CASE("optimal parse matches brute-force DP on random instances") {
  Rng rng(11);
  for (int instance = 0; instance < 200; ++instance) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
    const SymbolString t = oracle::random_string(rng, n, 1 + rng.below(50));
    std::vector<SymbolString> words;
    const std::size_t count = rng.below(12);
    for (std::size_t i = 0; i < count; ++i) {
      // Half of the words are cut from t itself so that they get used.
      if (rng.below(2) == 0 && t.size() >= 2) {
        const std::size_t len = 2 + rng.below(std::min<std::size_t>(t.size() - 1, 8));
        const std::size_t at = rng.below(t.size() - len + 1);
        words.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(at),
                           t.begin() + static_cast<std::ptrdiff_t>(at + len));
      } else {
        words.push_back(oracle::random_string(rng, n, 2 + rng.below(5)));
      }
    }
    const Dictionary dict = make_dict(n, words);
    const Parse p = optimal_parse(t, dict);
    const auto expected = oracle::parse_cost(t, strings_of(dict));
    REQUIRE(expected.has_value());
    CHECK(p.cost == *expected);
    CHECK(p.pieces.size() == p.cost);

    SymbolString spelled;
    for (NodeId id : p.pieces) {
      const auto& e = dict.entries();
      auto it = std::find_if(e.begin(), e.end(), [&](const auto& x) { return x.node == id; });
      REQUIRE(it != e.end());
      spelled.insert(spelled.end(), it->str.begin(), it->str.end());
    }
    CHECK(spelled == t);
  }
}

TEST_CASE("matcher finds exactly the occurrences a naive scan finds") {
  Rng rng(5);
  for (int instance = 0; instance < 100; ++instance) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(3));
    std::vector<SymbolString> words;
    for (std::size_t i = 0; i < 1 + rng.below(10); ++i) {
      words.push_back(oracle::random_string(rng, n, 1 + rng.below(5)));
    }
    Dictionary dict;
    std::uint32_t id = 0;
    for (const auto& w : words) dict.insert(w, NodeId{id++});
    const std::vector<SymbolString> entries = strings_of(dict);
    const SymbolString text = oracle::random_string(rng, n, rng.below(40));

    const Matcher matcher(dict);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> found;
    for (const auto& m : matcher.find_all(text)) {
      const auto it = std::find_if(dict.entries().begin(), dict.entries().end(),
                                   [&](const auto& e) { return e.node == m.node; });
      REQUIRE(it != dict.entries().end());
      found.emplace(m.begin, m.length,
                    static_cast<std::size_t>(it - dict.entries().begin()));
    }
    CHECK(found == oracle::occurrences(text, entries));
  }
}

TEST_CASE("ties go to the leftmost-longest tiling") {
  // "abab" over {a, b, ab, ba, aba}: several 2-piece tilings exist.
  const Dictionary dict = make_dict(2, {{0, 1}, {1, 0}, {0, 1, 0}});
  const Parse p = optimal_parse(SymbolString{0, 1, 0, 1}, dict);
  CHECK(p.cost == 2);
  REQUIRE(p.pieces.size() == 2);
  CHECK(p.pieces[0] == NodeId{4});  // aba
  CHECK(p.pieces[1] == NodeId{1});  // b
}

TEST_CASE("a string the dictionary cannot tile is an error") {
  Dictionary dict;
  dict.insert(SymbolString{0}, NodeId{0});
  CHECK_THROWS_AS((void)optimal_parse(SymbolString{0, 1}, dict), LexisError);
}

TEST_CASE("parse through an existing intermediate costs one") {
  const Dictionary dict = make_dict(3, {{0, 1, 2}});
  CHECK(optimal_parse(SymbolString{0, 1, 2}, dict).cost == 1);
  CHECK(optimal_parse(SymbolString{2, 1, 0}, dict).cost == 3);
}
