#include <doctest.h>

#include <cmath>

#include "evolexis/centrality.hpp"
#include "evolexis/errors.hpp"
#include "oracles.hpp"

using namespace evolexis;

namespace {

LexisDag random_dag(Rng& rng) {
  const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(4));
  const auto targets = oracle::planted_targets(rng, n, 2 + rng.below(8), 8 + rng.below(30));
  return glexis_build(Alphabet{n}, targets);
}

}  // namespace

TEST_CASE("path centrality matches explicit enumeration") {
  Rng rng(17);
  for (int instance = 0; instance < 50; ++instance) {
    const LexisDag dag = random_dag(rng);
    const oracle::PathCensus census = oracle::enumerate_paths(dag);
    REQUIRE(census.total <= 10000);
    CHECK(census.total == dag.total_target_length());

    const PathCounts counts = count_paths(dag);
    CHECK(counts.total == census.total);
    for (NodeId v : dag.all_nodes()) CHECK(counts.from_sources[v.value] == dag.length(v));

    const auto centrality = path_centrality(dag);
    CHECK(centrality.size() == dag.intermediate_count());
    for (const auto& [v, p] : centrality) {
      const auto it = census.through.find(v);
      CHECK(p == (it == census.through.end() ? 0 : it->second));
    }
  }
}

TEST_CASE("robustness curve matches enumeration after deletions") {
  Rng rng(23);
  for (int instance = 0; instance < 50; ++instance) {
    const LexisDag dag = random_dag(rng);
    const CoreSet core = g_core(dag);
    const auto curve = robustness_curve(dag, core);
    REQUIRE(curve.size() == core.size() + 1);
    CHECK(curve.front().second == 1.0);

    std::set<NodeId> removed;
    const double total = static_cast<double>(oracle::enumerate_paths(dag).total);
    for (std::size_t j = 0; j <= core.size(); ++j) {
      if (j > 0) removed.insert(core.members[j - 1]);
      const double left = static_cast<double>(oracle::enumerate_paths(dag, removed).total);
      CHECK(curve[j].second == doctest::Approx(left / total).epsilon(1e-12));
    }
    CHECK(curve.back().second <= core.tau + 1e-9);
  }
}

TEST_CASE("core threshold extremes") {
  Rng rng(31);
  for (int instance = 0; instance < 20; ++instance) {
    const LexisDag dag = random_dag(rng);
    CHECK(g_core(dag, CoreOptions{1.0}).size() == 0);

    const CoreSet cut = g_core(dag, CoreOptions{0.0});
    std::set<NodeId> removed(cut.members.begin(), cut.members.end());
    CHECK(oracle::enumerate_paths(dag, removed).total == 0);
    CHECK(cut.remaining_paths == 0);
  }
}

TEST_CASE("flat core respects its size bound") {
  Rng rng(37);
  for (int instance = 0; instance < 30; ++instance) {
    const LexisDag dag = random_dag(rng);
    const CoreSet flat = flat_core(dag, 0.85);
    std::set<Symbol> used;
    for (NodeId t : dag.targets()) used.insert(dag.str(t).begin(), dag.str(t).end());
    CHECK(flat.size() <= std::min(used.size(), dag.target_count()));
    CHECK(flat.covered_fraction() >= 0.15 - 1e-9);
  }
}

TEST_CASE("single target flat core at tau zero") {
  LexisDag dag(Alphabet{3});
  const NodeId t = dag.add_flat_target(SymbolString{0, 1, 2, 0, 1, 2});
  const CoreSet flat = flat_core(dag, 0.0);
  REQUIRE(flat.size() == 1);
  CHECK(flat.members[0] == t);
}

TEST_CASE("H-score from core sizes two and three") {
  LexisDag dag(Alphabet{3});
  dag.add_flat_target(SymbolString{0, 1, 0, 1});
  glexis_build(dag);
  REQUIRE(dag.intermediate_count() > 0);
  CoreSet core;
  core.members = {NodeId{0}, NodeId{1}};
  CoreSet flat;
  flat.members = {NodeId{0}, NodeId{1}, NodeId{2}};
  const double h = h_score_value(dag, core, flat);
  CHECK(h == doctest::Approx(1.0 / 3.0));
  CHECK(std::round(h * 100) / 100 == doctest::Approx(0.33));
}

TEST_CASE("flat DAG has H-score zero") {
  LexisDag dag(Alphabet{3});
  dag.add_flat_target(SymbolString{0, 1, 2});
  dag.add_flat_target(SymbolString{2, 1, 0});
  CHECK(h_score(dag).value == 0.0);
}

TEST_CASE("a perfect hourglass scores close to one") {
  // Twelve targets over twelve sources, all sharing one long waist.
  const std::uint32_t n = 12;
  SymbolString waist;
  for (Symbol s = 0; s < n; ++s) waist.push_back(s);
  std::vector<SymbolString> targets;
  for (Symbol s = 0; s < n; ++s) {
    SymbolString t = waist;
    t.push_back(s);
    targets.push_back(t);
  }
  const LexisDag dag = glexis_build(Alphabet{n}, targets);
  const HScore h = h_score(dag, CoreOptions{0.5});
  CHECK(h.core.size() == 1);
  CHECK(h.flat.size() >= 5);
  CHECK(h.value >= 0.8);
}

TEST_CASE("empty flat core is degenerate") {
  LexisDag dag(Alphabet{3});
  dag.add_flat_target(SymbolString{0, 1, 0, 1});
  glexis_build(dag);
  CHECK_THROWS_AS((void)h_score(dag, CoreOptions{1.0}), DegenerateError);
}
