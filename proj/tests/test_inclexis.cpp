#include <doctest.h>

#include <set>

#include "evolexis/errors.hpp"
#include "evolexis/inclexis.hpp"
#include "oracles.hpp"

using namespace evolexis;

namespace {

std::multiset<SymbolString> target_set(const LexisDag& dag) {
  std::multiset<SymbolString> out;
  for (NodeId t : dag.targets()) out.insert(dag.str(t));
  return out;
}

}  // namespace

TEST_CASE("marginal cost equals the committed stage-1 edge delta") {
  Rng rng(3);
  for (int instance = 0; instance < 40; ++instance) {
    const auto targets = oracle::planted_targets(rng, 4, 6, 24);
    const LexisDag dag = glexis_build(Alphabet{4}, targets);
    const SymbolString t = oracle::planted_targets(rng, 4, 1, 24).front();
    if (dag.find_target(t)) continue;

    LexisDag copy = dag;
    const std::vector<SymbolString> batch = {t};
    expand(copy, batch, ExpandOptions{false, {}});
    CHECK(marginal_cost(dag, t) == copy.edge_cost() - dag.edge_cost());
    CHECK(CostModel(dag).marginal_cost(t) == marginal_cost(dag, t));
    CHECK(marginal_cost_committed(dag, t) <= marginal_cost(dag, t));
  }
}

TEST_CASE("marginal cost boundaries") {
  LexisDag dag(Alphabet{3});
  dag.add_flat_target(SymbolString{0, 1, 2, 0, 1, 2});
  dag.add_flat_target(SymbolString{2, 0, 1, 2, 2});
  glexis_build(dag);
  const NodeId m = dag.intermediates().front();
  CHECK(marginal_cost(dag, dag.str(m)) == 1);

  LexisDag flat(Alphabet{3});
  flat.add_flat_target(SymbolString{0, 0});
  CHECK(marginal_cost(flat, SymbolString{1, 2, 1}) == 3);
}

TEST_CASE("expansion rejects duplicates") {
  LexisDag dag(Alphabet{3});
  dag.add_flat_target(SymbolString{0, 1, 2});
  const std::vector<SymbolString> again = {SymbolString{0, 1, 2}};
  CHECK_THROWS_AS(expand(dag, again), DuplicateTargetError);
  const std::vector<SymbolString> twice = {SymbolString{1, 1}, SymbolString{1, 1}};
  CHECK_THROWS_AS(expand(dag, twice), DuplicateTargetError);
}

TEST_CASE("expansion only adds out-edges to existing nodes") {
  Rng rng(8);
  const auto initial = oracle::planted_targets(rng, 4, 5, 20);
  LexisDag dag = glexis_build(Alphabet{4}, initial);
  std::map<NodeId, ParseForm> before;
  for (NodeId v : dag.non_sources()) before[v] = dag.pieces(v);

  std::vector<SymbolString> batch;
  for (const auto& t : oracle::planted_targets(rng, 4, 8, 20)) {
    if (!dag.find_target(t)) batch.push_back(t);
  }
  const ExpansionReport r = expand(dag, batch);
  CHECK(r.targets.size() == batch.size());
  for (const auto& [v, form] : before) CHECK(dag.pieces(v) == form);
  CHECK(validate_dag(dag).empty());
}

TEST_CASE("incremental steps keep the DAG valid and the target set exact") {
  Rng rng(21);
  const auto initial = oracle::planted_targets(rng, 4, 6, 20);
  LexisDag dag = glexis_build(Alphabet{4}, initial);
  std::multiset<SymbolString> expected(initial.begin(), initial.end());
  std::vector<NodeId> order;
  for (const auto& t : initial) order.push_back(*dag.find_target(t));

  for (int step = 0; step < 30; ++step) {
    std::vector<SymbolString> additions;
    for (const auto& t : oracle::planted_targets(rng, 4, 3, 20)) {
      if (!expected.count(t) &&
          std::find(additions.begin(), additions.end(), t) == additions.end()) {
        additions.push_back(t);
      }
    }
    std::vector<NodeId> removals(order.begin(), order.begin() + 3);
    for (NodeId v : removals) expected.erase(expected.find(dag.str(v)));
    order.erase(order.begin(), order.begin() + 3);

    const IncrementalReport r = incremental_step(dag, additions, removals);
    for (NodeId t : r.expansion.targets) order.push_back(t);
    for (const auto& t : additions) expected.insert(t);

    REQUIRE(validate_dag(dag).empty());
    CHECK(target_set(dag) == expected);
    CHECK(dag.edge_cost() <= dag.total_target_length());
  }
}
