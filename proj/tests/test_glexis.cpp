#include <doctest.h>

#include "evolexis/glexis.hpp"
#include "oracles.hpp"

using namespace evolexis;

namespace {
const SymbolTable abcd = SymbolTable::for_alphabet(Alphabet{4});
}

TEST_CASE("worked example: aabcaabdaabc") {
  const std::vector<SymbolString> targets = {abcd.parse("aabcaabdaabc")};
  std::vector<GlexisStep> trace;
  const LexisDag dag = glexis_build(Alphabet{4}, targets, {}, &trace);

  REQUIRE(trace.size() == 2);
  CHECK(trace[0].cost_before == 12);
  CHECK(trace[0].cost_after == 9);
  CHECK(abcd.render(dag.str(trace[0].node)) == "aab");
  CHECK(trace[1].cost_before == 9);
  CHECK(trace[1].cost_after == 9);
  CHECK(abcd.render(dag.str(trace[1].node)) == "aabc");
  CHECK(dag.edge_cost() == 9);
  CHECK(validate_dag(dag).empty());
}

TEST_CASE("a positive threshold stops at break-even repeats") {
  const std::vector<SymbolString> targets = {abcd.parse("aabcaabdaabc")};
  std::vector<GlexisStep> trace;
  glexis_build(Alphabet{4}, targets, GlexisOptions{1}, &trace);
  CHECK(trace.size() == 1);
}

TEST_CASE("repeat saving") {
  CHECK(repeat_saving(3, 3) == 3);
  CHECK(repeat_saving(2, 2) == 0);
  CHECK(repeat_saving(2, 5) == 3);
  CHECK(repeat_saving(1, 4) == -1);
}

TEST_CASE("non-overlapping counts match greedy left to right") {
  const std::vector<NodeId> a = {NodeId{0}, NodeId{0}, NodeId{0}, NodeId{0}};
  const std::vector<NodeId> aa = {NodeId{0}, NodeId{0}};
  std::vector<std::size_t> offsets;
  CHECK(count_non_overlapping(a, aa, &offsets) == 2);
  CHECK(offsets == std::vector<std::size_t>{0, 2});
  CHECK(count_non_overlapping(std::span(a).first(3), aa) == 1);
}

TEST_CASE("no repeat in a string without repeats") {
  LexisDag dag(Alphabet{4});
  dag.add_flat_target(abcd.parse("abcd"));
  CHECK_FALSE(best_repeat(dag).has_value());
}

TEST_CASE("best_repeat saving matches exhaustive enumeration at every step") {
  Rng rng(2024);
  for (int instance = 0; instance < 60; ++instance) {
    const std::size_t count = 1 + rng.below(4);
    const std::size_t len = 4 + rng.below(17);
    const auto targets = oracle::planted_targets(rng, 5, count, len);

    std::size_t steps = 0;
    auto observer = [&](const LexisDag& dag, const RepeatCandidate& chosen) {
      const auto expected = oracle::best_saving(dag, dag.non_sources());
      REQUIRE(expected.has_value());
      CHECK(chosen.saving == *expected);
      CHECK(chosen.saving == repeat_saving(chosen.occurrences, chosen.token_length));
      ++steps;
    };
    const LexisDag dag = glexis_build(Alphabet{5}, targets, {}, nullptr, observer);
    const auto left = oracle::best_saving(dag, dag.non_sources());
    CHECK((!left || *left < 0));
    CHECK(validate_dag(dag).empty());
    for (NodeId t : dag.targets()) CHECK(expand_to_sources(dag, t) == dag.str(t));
  }
}

TEST_CASE("clean-slate cost never exceeds the flat cost") {
  Rng rng(99);
  for (int instance = 0; instance < 20; ++instance) {
    const auto targets = oracle::planted_targets(rng, 6, 5, 30);
    const LexisDag dag = glexis_build(Alphabet{6}, targets);
    CHECK(dag.edge_cost() <= dag.total_target_length());
    CHECK(validate_dag(dag).empty());
  }
}
