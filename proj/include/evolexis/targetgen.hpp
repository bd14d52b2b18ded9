#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evolexis/inclexis.hpp"
#include "evolexis/lexis_dag.hpp"
#include "evolexis/rng.hpp"

namespace evolexis {

enum class GenModel { RND, M, MS, MR, MRS };

[[nodiscard]] const char* to_string(GenModel model);
[[nodiscard]] GenModel parse_gen_model(const std::string& name);

/// Denominator of the recombination selection ratio.
enum class RatioForm {
  /// (|x1| C(s1) + |x2| C(s2)) / (|x1| + |x2|): a length-weighted seed cost.
  Weighted,
  /// |x1| C(s1) + |x2| C(s2), without normalization.
  Printed,
};

struct GenModelConfig {
  GenModel model = GenModel::MRS;
  double beta = 12.0;  // 1 = weak selection, 12 = strong
  std::size_t k = 50;
  RatioForm ratio = RatioForm::Weighted;
  CostModel::Mode costing = CostModel::Mode::ParseOnly;
  std::size_t stall_limit = 10000;  // consecutive failed trials before StallError
};

/// One generated candidate and what selection made of it.
struct CandidateRecord {
  SymbolString candidate;
  std::vector<NodeId> seeds;
  std::optional<std::size_t> crossover;  // 1-based index i
  std::optional<std::size_t> variant;    // which recombination, 1..4
  std::optional<std::pair<std::size_t, std::size_t>> fragments;  // (|x1|, |x2|)
  std::optional<std::size_t> cost;       // C(t*)
  std::optional<double> ratio;           // R
  double probability = 1.0;              // acceptance probability given R
  bool duplicate = false;
  bool passed = false;                   // survived duplicate and selection checks
  bool accepted = false;                 // emitted into the batch
};

struct Batch {
  std::vector<SymbolString> targets;
  std::vector<CandidateRecord> trials;

  /// Passing trials over trials that reached selection. Duplicates are
  /// redrawn before selection and do not count.
  [[nodiscard]] double acceptance_likelihood() const;
  /// Mean C(t*) over the emitted targets; empty if no emitted trial was costed.
  [[nodiscard]] std::optional<double> mean_accepted_cost() const;
};

/// 1 for R <= 1, exp(-beta (R - 1)) otherwise.
[[nodiscard]] double acceptance_probability(double ratio, double beta);

struct Recombination {
  SymbolString str;
  std::size_t from_first = 0;   // |x1|, symbols taken from the first seed
  std::size_t from_second = 0;  // |x2|
};

/// The four crossover products of two seeds at 1-based index i, each with
/// `junction` inserted where the two fragments meet.
[[nodiscard]] std::array<Recombination, 4> recombine(const SymbolString& first,
                                                     const SymbolString& second, std::size_t i,
                                                     Symbol junction);

/// Selection ratio for a recombination given the seeds' current costs.
[[nodiscard]] double recombination_ratio(std::size_t cost, const Recombination& r,
                                         std::size_t first_seed_cost,
                                         std::size_t second_seed_cost, RatioForm form);

/// Random targets of length k; strings already in `dag` or in the batch are
/// redrawn.
Batch gen_rnd(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);
/// Single-symbol mutants of random existing targets.
Batch gen_m(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);
/// Mutation plus selection on C(t*) / C(seed).
Batch gen_ms(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);
/// Recombination with a junction mutation; one of the four products is
/// emitted per round, without selection.
Batch gen_mr(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);
/// Recombination plus selection; one passing product is emitted per round.
Batch gen_mrs(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);

/// Dispatches on cfg.model.
Batch generate(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng);

}  // namespace evolexis
