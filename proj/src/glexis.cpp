#include "evolexis/glexis.hpp"

#include <algorithm>
#include <tuple>

namespace evolexis {

namespace {

struct Site {
  std::uint32_t host;  // index into the scanned host list
  std::uint32_t pos;
};

class RepeatScanner {
 public:
  RepeatScanner(const LexisDag& dag, std::span<const NodeId> hosts, const GlexisOptions& options)
      : dag_(dag), hosts_(hosts), options_(options) {
    forms_.reserve(hosts.size());
    for (NodeId h : hosts) forms_.push_back(&dag.pieces(h));
  }

  std::optional<RepeatCandidate> run() {
    // Level two: group every adjacent token pair.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Site>> pairs;
    for (std::uint32_t h = 0; h < forms_.size(); ++h) {
      const ParseForm& form = *forms_[h];
      for (std::uint32_t p = 0; p + 1 < form.size(); ++p) {
        pairs.emplace_back(form[p].value, form[p + 1].value, Site{h, p});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      const Site& sa = std::get<2>(a);
      const Site& sb = std::get<2>(b);
      return sa.host != sb.host ? sa.host < sb.host : sa.pos < sb.pos;
    });

    std::vector<Site> group;
    for (std::size_t i = 0; i < pairs.size();) {
      std::size_t j = i;
      group.clear();
      while (j < pairs.size() && std::get<0>(pairs[j]) == std::get<0>(pairs[i]) &&
             std::get<1>(pairs[j]) == std::get<1>(pairs[i])) {
        group.push_back(std::get<2>(pairs[j]));
        ++j;
      }
      if (group.size() >= 2) explore(group, 2);
      i = j;
    }
    if (!have_best_) return std::nullopt;
    return std::move(best_);
  }

 private:
  // Sites arrive sorted in scan order (host, then position).
  void explore(const std::vector<Site>& sites, std::uint32_t len) {
    evaluate(sites, len);

    std::vector<std::pair<std::uint32_t, Site>> next;
    next.reserve(sites.size());
    for (const Site& s : sites) {
      const ParseForm& form = *forms_[s.host];
      if (s.pos + len < form.size()) next.emplace_back(form[s.pos + len].value, s);
    }
    if (next.size() < 2) return;
    std::stable_sort(next.begin(), next.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Site> child;
    for (std::size_t i = 0; i < next.size();) {
      std::size_t j = i;
      child.clear();
      while (j < next.size() && next[j].first == next[i].first) child.push_back(next[j++].second);
      if (child.size() >= 2) explore(child, len + 1);
      i = j;
    }
  }

  void evaluate(const std::vector<Site>& sites, std::uint32_t len) {
    std::size_t f = 0;
    std::uint32_t last_host = UINT32_MAX;
    std::uint32_t free_from = 0;
    for (const Site& s : sites) {
      if (s.host != last_host) {
        last_host = s.host;
        free_from = 0;
      }
      if (s.pos >= free_from) {
        ++f;
        free_from = s.pos + len;
      }
    }
    if (f < 2) return;
    const std::int64_t saving = repeat_saving(f, len);
    if (saving < options_.min_saving) return;
    if (have_best_) {
      const Site& first = sites.front();
      const auto key = std::tuple(saving, len, -static_cast<std::int64_t>(first.host),
                                  -static_cast<std::int64_t>(first.pos));
      const auto best_key = std::tuple(best_.saving, best_.token_length, -best_host_, -best_pos_);
      if (key <= best_key) return;
    }

    const Site& first = sites.front();
    const ParseForm& form = *forms_[first.host];
    std::vector<NodeId> tokens(form.begin() + first.pos, form.begin() + first.pos + len);
    SymbolString spelled;
    for (NodeId t : tokens) {
      const SymbolString& s = dag_.str(t);
      spelled.insert(spelled.end(), s.begin(), s.end());
    }
    if (dag_.find_intermediate(spelled)) return;

    RepeatCandidate cand;
    cand.tokens = std::move(tokens);
    cand.occurrences = f;
    cand.token_length = len;
    cand.saving = saving;
    last_host = UINT32_MAX;
    for (const Site& s : sites) {
      if (s.host != last_host) {
        last_host = s.host;
        free_from = 0;
      }
      if (s.pos >= free_from) {
        cand.sites.push_back(TokenRun{hosts_[s.host], s.pos, len});
        free_from = s.pos + len;
      }
    }
    best_ = std::move(cand);
    best_host_ = first.host;
    best_pos_ = first.pos;
    have_best_ = true;
  }

  const LexisDag& dag_;
  std::span<const NodeId> hosts_;
  const GlexisOptions& options_;
  std::vector<const ParseForm*> forms_;
  RepeatCandidate best_;
  std::int64_t best_host_ = 0;
  std::int64_t best_pos_ = 0;
  bool have_best_ = false;
};

}  // namespace

std::size_t count_non_overlapping(std::span<const NodeId> form, std::span<const NodeId> tokens,
                                  std::vector<std::size_t>* offsets) {
  if (tokens.empty() || tokens.size() > form.size()) return 0;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + tokens.size() <= form.size()) {
    if (std::equal(tokens.begin(), tokens.end(), form.begin() + static_cast<std::ptrdiff_t>(i))) {
      if (offsets) offsets->push_back(i);
      ++count;
      i += tokens.size();
    } else {
      ++i;
    }
  }
  return count;
}

std::optional<RepeatCandidate> best_repeat(const LexisDag& dag, std::span<const NodeId> hosts,
                                           const GlexisOptions& options) {
  return RepeatScanner(dag, hosts, options).run();
}

std::optional<RepeatCandidate> best_repeat(const LexisDag& dag, const GlexisOptions& options) {
  const std::vector<NodeId>& hosts = dag.non_sources();
  return best_repeat(dag, std::span<const NodeId>(hosts), options);
}

std::vector<GlexisStep> glexis_compress(LexisDag& dag, std::vector<NodeId> hosts,
                                        const GlexisOptions& options,
                                        const GlexisObserver& observer) {
  std::vector<GlexisStep> steps;
  while (auto cand = best_repeat(dag, hosts, options)) {
    if (observer) observer(dag, *cand);
    GlexisStep step;
    step.cost_before = dag.edge_cost();
    step.node = dag.add_intermediate(cand->sites);
    step.cost_after = dag.edge_cost();
    step.chosen = std::move(*cand);
    hosts.push_back(step.node);
    steps.push_back(std::move(step));
  }
  return steps;
}

LexisDag glexis_build(const Alphabet& alphabet, std::span<const SymbolString> targets,
                      const GlexisOptions& options, std::vector<GlexisStep>* trace,
                      const GlexisObserver& observer) {
  LexisDag dag(alphabet);
  for (const SymbolString& t : targets) dag.add_flat_target(t);
  auto steps = glexis_build(dag, options, observer);
  if (trace) *trace = std::move(steps);
  return dag;
}

std::vector<GlexisStep> glexis_build(LexisDag& seed, const GlexisOptions& options,
                                     const GlexisObserver& observer) {
  return glexis_compress(seed, seed.non_sources(), options, observer);
}

}  // namespace evolexis
