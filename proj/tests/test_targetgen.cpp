#include <doctest.h>

#include <cmath>
#include <set>

#include "evolexis/errors.hpp"
#include "evolexis/metrics.hpp"
#include "evolexis/targetgen.hpp"
#include "oracles.hpp"

using namespace evolexis;

namespace {

LexisDag seeded_dag(Rng& rng, std::uint32_t n, std::size_t count, std::size_t k) {
  std::vector<SymbolString> targets;
  std::set<SymbolString> seen;
  while (targets.size() < count) {
    auto t = oracle::random_string(rng, n, k);
    if (seen.insert(t).second) targets.push_back(t);
  }
  return glexis_build(Alphabet{n}, targets);
}

GenModelConfig config(GenModel model, std::size_t k, double beta = 12.0) {
  GenModelConfig cfg;
  cfg.model = model;
  cfg.k = k;
  cfg.beta = beta;
  return cfg;
}

}  // namespace

TEST_CASE("acceptance probability") {
  CHECK(acceptance_probability(0.5, 12) == 1.0);
  CHECK(acceptance_probability(1.0, 12) == 1.0);
  CHECK(acceptance_probability(2.0, 12) == doctest::Approx(std::exp(-12.0)));
  CHECK(acceptance_probability(2.0, 12) == doctest::Approx(6.144e-6).epsilon(1e-3));
  CHECK(acceptance_probability(1.5, 12) < acceptance_probability(1.5, 1));
  CHECK(acceptance_probability(1.6, 1) < acceptance_probability(1.5, 1));
}

TEST_CASE("recombination products follow the slicing formulas") {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + rng.below(30);
    const SymbolString s1 = oracle::random_string(rng, 5, k);
    const SymbolString s2 = oracle::random_string(rng, 5, k);
    const std::size_t at = 1 + rng.below(k - 1);
    const Symbol c = static_cast<Symbol>(rng.below(5));
    // 1-based inclusive slice [from, to].
    auto slice = [](const SymbolString& s, std::size_t from, std::size_t to) {
      if (from > to) return SymbolString{};
      return SymbolString(s.begin() + static_cast<std::ptrdiff_t>(from - 1),
                          s.begin() + static_cast<std::ptrdiff_t>(to));
    };
    auto cat = [c](SymbolString x, const SymbolString& y) {
      x.push_back(c);
      x.insert(x.end(), y.begin(), y.end());
      return x;
    };
    const auto products = recombine(s1, s2, at, c);
    CHECK(products[0].str == cat(slice(s1, 1, at - 1), slice(s2, at + 1, k)));
    CHECK(products[1].str == cat(slice(s2, 1, at - 1), slice(s1, at + 1, k)));
    CHECK(products[2].str == cat(slice(s2, at + 1, k), slice(s1, 1, at - 1)));
    CHECK(products[3].str == cat(slice(s1, at + 1, k), slice(s2, 1, at - 1)));
    for (const auto& p : products) {
      CHECK(p.str.size() == k);
      CHECK(p.from_first + p.from_second == k - 1);
    }
    CHECK(products[0].from_first == at - 1);
    CHECK(products[0].from_second == k - at);
  }
}

TEST_CASE("crossover at the first index") {
  const SymbolString s1 = {0, 0, 0, 0};
  const SymbolString s2 = {1, 1, 1, 1};
  const auto p = recombine(s1, s2, 1, 2);
  CHECK(p[0].str == SymbolString{2, 1, 1, 1});
  CHECK(p[0].from_first == 0);
  CHECK(p[0].from_second == 3);
}

TEST_CASE("selection ratio forms") {
  const Recombination r{SymbolString(10), 4, 5};
  CHECK(recombination_ratio(9, r, 10, 8, RatioForm::Weighted) ==
        doctest::Approx(9.0 / ((4 * 10 + 5 * 8) / 9.0)));
  CHECK(recombination_ratio(9, r, 10, 8, RatioForm::Printed) == doctest::Approx(9.0 / 80.0));
}

TEST_CASE("random targets are uniform and fresh") {
  Rng rng(67);
  LexisDag dag(Alphabet{8});
  const Batch b = gen_rnd(dag, config(GenModel::RND, 10), 1000, rng);
  REQUIRE(b.targets.size() == 1000);
  std::vector<double> counts(8, 0.0);
  for (const auto& t : b.targets) {
    CHECK(t.size() == 10);
    for (Symbol s : t) counts[s] += 1;
  }
  const double expected = 10000.0 / 8.0;
  const double sigma = std::sqrt(10000.0 * (1.0 / 8.0) * (7.0 / 8.0));
  for (double c : counts) CHECK(std::abs(c - expected) <= 3 * sigma);
  CHECK(std::set<SymbolString>(b.targets.begin(), b.targets.end()).size() == 1000);
}

TEST_CASE("mutants differ from their seed in one position") {
  Rng rng(71);
  LexisDag dag = seeded_dag(rng, 2, 1, 12);
  const SymbolString seed = dag.str(dag.targets().front());
  const Batch b = gen_m(dag, config(GenModel::M, 12), 10, rng);
  for (const auto& t : b.targets) {
    CHECK(levenshtein(t, seed) == 1);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < t.size(); ++i) diff += t[i] != seed[i];
    CHECK(diff == 1);
  }
  CHECK(b.acceptance_likelihood() == 1.0);
}

TEST_CASE("MS selection logs every trial") {
  Rng rng(73);
  LexisDag dag = seeded_dag(rng, 4, 8, 30);
  const Batch b = gen_ms(dag, config(GenModel::MS, 30), 5, rng);
  CHECK(b.targets.size() == 5);
  std::size_t accepted = 0;
  for (const auto& t : b.trials) {
    if (t.duplicate) continue;
    REQUIRE(t.ratio.has_value());
    CHECK(t.probability == doctest::Approx(acceptance_probability(*t.ratio, 12)));
    if (*t.ratio <= 1.0) CHECK(t.passed);
    accepted += t.accepted;
  }
  CHECK(accepted == 5);
}

TEST_CASE("MR accepts everything it does not reject as duplicate") {
  Rng rng(79);
  LexisDag dag = seeded_dag(rng, 4, 8, 30);
  const Batch b = gen_mr(dag, config(GenModel::MR, 30), 20, rng);
  CHECK(b.targets.size() == 20);
  CHECK(b.acceptance_likelihood() == 1.0);
  for (const auto& t : b.targets) CHECK(t.size() == 30);
}

TEST_CASE("MRS emits at most one product per round") {
  Rng rng(83);
  LexisDag dag = seeded_dag(rng, 4, 8, 30);
  const Batch b = gen_mrs(dag, config(GenModel::MRS, 30), 5, rng);
  CHECK(b.targets.size() == 5);
  REQUIRE(b.trials.size() % 4 == 0);
  for (std::size_t r = 0; r < b.trials.size(); r += 4) {
    std::size_t emitted = 0;
    for (std::size_t v = 0; v < 4; ++v) {
      emitted += b.trials[r + v].accepted;
      CHECK(b.trials[r + v].variant == v + 1);
      CHECK(b.trials[r + v].seeds[0] != b.trials[r + v].seeds[1]);
    }
    CHECK(emitted <= 1);
  }
  std::set<SymbolString> existing;
  for (NodeId t : dag.targets()) existing.insert(dag.str(t));
  for (const auto& t : b.targets) CHECK_FALSE(existing.count(t));
}

TEST_CASE("generation needs enough seeds") {
  Rng rng(89);
  LexisDag dag = seeded_dag(rng, 4, 1, 10);
  CHECK_THROWS_AS((void)gen_mrs(dag, config(GenModel::MRS, 10), 1, rng), LexisError);
  LexisDag empty(Alphabet{4});
  CHECK_THROWS_AS((void)gen_m(empty, config(GenModel::M, 10), 1, rng), LexisError);
}

TEST_CASE("a saturated space stalls instead of looping") {
  // Over two symbols with k = 1 both strings already exist, so every
  // candidate is a duplicate.
  LexisDag dag(Alphabet{2});
  dag.add_flat_target(SymbolString{0});
  dag.add_flat_target(SymbolString{1});
  Rng rng(97);
  GenModelConfig cfg = config(GenModel::M, 1);
  cfg.stall_limit = 50;
  CHECK_THROWS_AS((void)gen_m(dag, cfg, 1, rng), StallError);
  cfg.model = GenModel::RND;
  CHECK_THROWS_AS((void)gen_rnd(dag, cfg, 1, rng), StallError);
}

TEST_CASE("identical seeds give identical batches") {
  Rng a_rng(101);
  LexisDag dag = seeded_dag(a_rng, 4, 8, 30);
  Rng r1(5), r2(5);
  const Batch a = gen_mrs(dag, config(GenModel::MRS, 30), 5, r1);
  const Batch b = gen_mrs(dag, config(GenModel::MRS, 30), 5, r2);
  CHECK(a.targets == b.targets);
  CHECK(a.trials.size() == b.trials.size());
}

TEST_CASE("model names round trip") {
  for (GenModel m : {GenModel::RND, GenModel::M, GenModel::MS, GenModel::MR, GenModel::MRS}) {
    CHECK(parse_gen_model(to_string(m)) == m);
  }
  CHECK_THROWS_AS((void)parse_gen_model("XYZ"), ConfigError);
}
