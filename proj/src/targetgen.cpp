#include "evolexis/targetgen.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

using StringSet = std::unordered_set<SymbolString, SymbolStringHash>;

class BatchBuilder {
 public:
  BatchBuilder(const LexisDag& dag, const GenModelConfig& cfg) : dag_(dag), cfg_(cfg) {}

  [[nodiscard]] bool is_duplicate(const SymbolString& s) const {
    return dag_.find_target(s).has_value() || pending_.contains(s);
  }

  void log(CandidateRecord rec) {
    if (rec.accepted) {
      pending_.insert(rec.candidate);
      batch_.targets.push_back(rec.candidate);
      failures_ = 0;
    } else if (++failures_ >= cfg_.stall_limit) {
      throw StallError(std::string(to_string(cfg_.model)) + ": no acceptable target in " +
                       std::to_string(cfg_.stall_limit) + " consecutive trials");
    }
    batch_.trials.push_back(std::move(rec));
  }

  [[nodiscard]] std::size_t emitted() const { return batch_.targets.size(); }
  Batch take() { return std::move(batch_); }

 private:
  const LexisDag& dag_;
  const GenModelConfig& cfg_;
  StringSet pending_;
  Batch batch_;
  std::size_t failures_ = 0;
};

void require_targets(const LexisDag& dag, std::size_t minimum, GenModel model) {
  if (dag.target_count() < minimum) {
    throw LexisError(std::string(to_string(model)) + " needs at least " + std::to_string(minimum) +
                     " existing targets");
  }
}

NodeId pick_target(const std::vector<NodeId>& targets, Rng& rng) {
  return targets[rng.below(targets.size())];
}

SymbolString mutate(const SymbolString& seed, std::size_t alphabet, Rng& rng) {
  SymbolString out = seed;
  const std::size_t pos = rng.below(out.size());
  // Uniform over the n - 1 symbols that differ from the current one.
  auto replacement = static_cast<Symbol>(rng.below(alphabet - 1));
  if (replacement >= out[pos]) ++replacement;
  out[pos] = replacement;
  return out;
}

bool select(double ratio, double beta, Rng& rng, double* probability) {
  *probability = acceptance_probability(ratio, beta);
  if (ratio <= 1.0) return true;
  return rng.unit() < *probability;
}

}  // namespace

const char* to_string(GenModel model) {
  switch (model) {
    case GenModel::RND: return "RND";
    case GenModel::M: return "M";
    case GenModel::MS: return "MS";
    case GenModel::MR: return "MR";
    case GenModel::MRS: return "MRS";
  }
  return "?";
}

GenModel parse_gen_model(const std::string& name) {
  for (GenModel m : {GenModel::RND, GenModel::M, GenModel::MS, GenModel::MR, GenModel::MRS}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown generation model '" + name + "'");
}

double Batch::acceptance_likelihood() const {
  std::size_t passed = 0;
  std::size_t judged = 0;
  for (const CandidateRecord& t : trials) {
    if (t.duplicate) continue;
    ++judged;
    passed += t.passed ? 1 : 0;
  }
  return judged == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(judged);
}

std::optional<double> Batch::mean_accepted_cost() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const CandidateRecord& t : trials) {
    if (t.accepted && t.cost) {
      sum += static_cast<double>(*t.cost);
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

double acceptance_probability(double ratio, double beta) {
  if (ratio <= 1.0) return 1.0;
  return std::exp(-beta * (ratio - 1.0));
}

std::array<Recombination, 4> recombine(const SymbolString& first, const SymbolString& second,
                                       std::size_t i, Symbol junction) {
  const std::size_t k = first.size();
  if (second.size() != k || k < 2 || i < 1 || i > k - 1) {
    throw LexisError("recombination needs equal-length seeds and 1 <= i <= k - 1");
  }
  // head(s) = s[1 : i-1], tail(s) = s[i+1 : k] in 1-based inclusive slices.
  auto head = [i](const SymbolString& s) { return std::span(s).first(i - 1); };
  auto tail = [i](const SymbolString& s) { return std::span(s).subspan(i); };
  auto join = [junction](std::span<const Symbol> left, std::span<const Symbol> right) {
    SymbolString out(left.begin(), left.end());
    out.push_back(junction);
    out.insert(out.end(), right.begin(), right.end());
    return out;
  };
  return {{
      {join(head(first), tail(second)), i - 1, k - i},
      {join(head(second), tail(first)), k - i, i - 1},
      {join(tail(second), head(first)), i - 1, k - i},
      {join(tail(first), head(second)), k - i, i - 1},
  }};
}

double recombination_ratio(std::size_t cost, const Recombination& r, std::size_t first_seed_cost,
                           std::size_t second_seed_cost, RatioForm form) {
  double denom = static_cast<double>(r.from_first) * static_cast<double>(first_seed_cost) +
                 static_cast<double>(r.from_second) * static_cast<double>(second_seed_cost);
  if (form == RatioForm::Weighted) {
    denom /= static_cast<double>(r.from_first + r.from_second);
  }
  return static_cast<double>(cost) / denom;
}

Batch gen_rnd(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  const std::size_t n = dag.alphabet().size;
  BatchBuilder builder(dag, cfg);
  while (builder.emitted() < count) {
    CandidateRecord rec;
    rec.candidate.resize(cfg.k);
    for (Symbol& s : rec.candidate) s = static_cast<Symbol>(rng.below(n));
    rec.duplicate = builder.is_duplicate(rec.candidate);
    rec.passed = rec.accepted = !rec.duplicate;
    builder.log(std::move(rec));
  }
  return builder.take();
}

Batch gen_m(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  require_targets(dag, 1, GenModel::M);
  const std::vector<NodeId> targets = dag.targets();
  BatchBuilder builder(dag, cfg);
  while (builder.emitted() < count) {
    CandidateRecord rec;
    const NodeId seed = pick_target(targets, rng);
    rec.seeds = {seed};
    rec.candidate = mutate(dag.str(seed), dag.alphabet().size, rng);
    rec.duplicate = builder.is_duplicate(rec.candidate);
    rec.passed = rec.accepted = !rec.duplicate;
    builder.log(std::move(rec));
  }
  return builder.take();
}

Batch gen_ms(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  require_targets(dag, 1, GenModel::MS);
  const std::vector<NodeId> targets = dag.targets();
  const CostModel costs(dag, cfg.costing);
  BatchBuilder builder(dag, cfg);
  while (builder.emitted() < count) {
    CandidateRecord rec;
    const NodeId seed = pick_target(targets, rng);
    rec.seeds = {seed};
    rec.candidate = mutate(dag.str(seed), dag.alphabet().size, rng);
    rec.duplicate = builder.is_duplicate(rec.candidate);
    if (!rec.duplicate) {
      rec.cost = costs.marginal_cost(rec.candidate);
      rec.ratio = static_cast<double>(*rec.cost) / static_cast<double>(dag.in_degree(seed));
      rec.passed = select(*rec.ratio, cfg.beta, rng, &rec.probability);
      rec.accepted = rec.passed;
    }
    builder.log(std::move(rec));
  }
  return builder.take();
}

namespace {

struct RecombinationRound {
  NodeId first;
  NodeId second;
  std::size_t index = 1;
  std::array<Recombination, 4> products;
};

RecombinationRound draw_round(const LexisDag& dag, const std::vector<NodeId>& targets,
                              std::size_t k, Rng& rng) {
  RecombinationRound round;
  const std::size_t a = rng.below(targets.size());
  std::size_t b = rng.below(targets.size() - 1);
  if (b >= a) ++b;
  round.first = targets[a];
  round.second = targets[b];
  round.index = static_cast<std::size_t>(rng.between(1, k - 1));
  const auto junction = static_cast<Symbol>(rng.below(dag.alphabet().size));
  round.products = recombine(dag.str(round.first), dag.str(round.second), round.index, junction);
  return round;
}

CandidateRecord describe(const RecombinationRound& round, std::size_t variant) {
  CandidateRecord rec;
  const Recombination& r = round.products[variant];
  rec.candidate = r.str;
  rec.seeds = {round.first, round.second};
  rec.crossover = round.index;
  rec.variant = variant + 1;
  rec.fragments = std::pair(r.from_first, r.from_second);
  return rec;
}

}  // namespace

Batch gen_mr(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  require_targets(dag, 2, GenModel::MR);
  const std::vector<NodeId> targets = dag.targets();
  const CostModel costs(dag, cfg.costing);
  BatchBuilder builder(dag, cfg);
  while (builder.emitted() < count) {
    const RecombinationRound round = draw_round(dag, targets, cfg.k, rng);
    CandidateRecord rec = describe(round, rng.below(4));
    rec.duplicate = builder.is_duplicate(rec.candidate);
    if (!rec.duplicate) {
      rec.cost = costs.marginal_cost(rec.candidate);
      rec.ratio = recombination_ratio(*rec.cost, round.products[*rec.variant - 1],
                                      dag.in_degree(round.first), dag.in_degree(round.second),
                                      cfg.ratio);
      rec.passed = rec.accepted = true;
    }
    builder.log(std::move(rec));
  }
  return builder.take();
}

Batch gen_mrs(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  require_targets(dag, 2, GenModel::MRS);
  const std::vector<NodeId> targets = dag.targets();
  const CostModel costs(dag, cfg.costing);
  BatchBuilder builder(dag, cfg);
  while (builder.emitted() < count) {
    const RecombinationRound round = draw_round(dag, targets, cfg.k, rng);
    const std::size_t first_cost = dag.in_degree(round.first);
    const std::size_t second_cost = dag.in_degree(round.second);

    std::array<CandidateRecord, 4> recs;
    std::vector<std::size_t> passers;
    for (std::size_t v = 0; v < 4; ++v) {
      CandidateRecord& rec = recs[v];
      rec = describe(round, v);
      // Two products of one round can coincide; the later one is a duplicate.
      rec.duplicate = builder.is_duplicate(rec.candidate) ||
                      std::any_of(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(v),
                                  [&rec](const CandidateRecord& o) {
                                    return o.candidate == rec.candidate;
                                  });
      if (rec.duplicate) continue;
      rec.cost = costs.marginal_cost(rec.candidate);
      rec.ratio = recombination_ratio(*rec.cost, round.products[v], first_cost, second_cost,
                                      cfg.ratio);
      rec.passed = select(*rec.ratio, cfg.beta, rng, &rec.probability);
      if (rec.passed) passers.push_back(v);
    }
    if (!passers.empty()) recs[passers[rng.below(passers.size())]].accepted = true;
    for (CandidateRecord& rec : recs) builder.log(std::move(rec));
  }
  return builder.take();
}

Batch generate(const LexisDag& dag, const GenModelConfig& cfg, std::size_t count, Rng& rng) {
  switch (cfg.model) {
    case GenModel::RND: return gen_rnd(dag, cfg, count, rng);
    case GenModel::M: return gen_m(dag, cfg, count, rng);
    case GenModel::MS: return gen_ms(dag, cfg, count, rng);
    case GenModel::MR: return gen_mr(dag, cfg, count, rng);
    case GenModel::MRS: return gen_mrs(dag, cfg, count, rng);
  }
  throw ConfigError("unknown generation model");
}

}  // namespace evolexis
