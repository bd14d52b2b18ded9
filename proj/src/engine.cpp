#include "evolexis/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "evolexis/centrality.hpp"
#include "evolexis/errors.hpp"
#include "evolexis/glexis.hpp"
#include "evolexis/inclexis.hpp"
#include "evolexis/serialize.hpp"

namespace evolexis {

namespace {

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::vector<SymbolString> target_strings(const LexisDag& dag) {
  std::vector<SymbolString> out;
  for (NodeId t : dag.targets()) out.push_back(dag.str(t));
  return out;
}

std::vector<SymbolString> member_strings(const LexisDag& dag, const CoreSet& core) {
  std::vector<SymbolString> out;
  for (NodeId v : core.members) out.push_back(dag.str(v));
  return out;
}

CoreOptions core_options(const RunConfig& cfg) { return CoreOptions{cfg.tau, cfg.core_candidates}; }

std::optional<double> h_or_empty(const LexisDag& dag, const CoreSet& core, const CoreSet& flat) {
  try {
    return h_score_value(dag, core, flat);
  } catch (const DegenerateError&) {
    return std::nullopt;
  }
}

void log_trials(std::ostream& out, std::size_t iteration, GenModel model, const Batch& batch,
                const char* tag, const SymbolTable& symbols) {
  for (const CandidateRecord& t : batch.trials) {
    out << "iter=" << iteration << ' ' << tag << "=" << to_string(model);
    out << " C=";
    if (t.cost) out << *t.cost; else out << '-';
    out << " R=";
    if (t.ratio) out << std::setprecision(6) << *t.ratio; else out << '-';
    if (t.variant) out << " variant=" << *t.variant;
    out << " dup=" << t.duplicate << " passed=" << t.passed << " accepted=" << t.accepted
        << ' ' << symbols.render(t.candidate) << '\n';
  }
}

/// Fills the structural part of a record from the current DAG and the
/// histories, which it extends.
MetricRecord measure(RunState& state) {
  const LexisDag& dag = state.dag;
  MetricRecord rec;
  rec.iteration = state.iteration;
  rec.target_count = dag.target_count();
  rec.edge_cost = dag.edge_cost();
  rec.intermediate_count = dag.intermediate_count();
  rec.single_piece_targets = single_piece_targets(dag);
  rec.normalized_cost = normalized_cost(dag);
  rec.avg_depth = avg_depth(dag);
  rec.avg_node_length = avg_node_length(dag);
  rec.diversity = diversity(target_strings(dag));

  const CoreSet core = g_core(dag, core_options(state.cfg));
  const CoreSet flat = flat_core(dag, state.cfg.tau);
  rec.core_size = core.size();
  rec.flat_core_size = flat.size();
  rec.h_score = h_or_empty(dag, core, flat);
  rec.core_centrality = core.centrality;
  std::vector<SymbolString> strings = member_strings(dag, core);
  for (const SymbolString& s : strings) rec.core_strings.push_back(state.symbols.render(s));
  const SymbolString top1 = strings.empty() ? SymbolString{} : strings.front();
  rec.top1_core = state.symbols.render(top1);

  const std::size_t window = state.cfg.stability_window;
  if (window > 0 && state.core_history.size() >= window) {
    const auto& past = state.core_history[state.core_history.size() - window];
    if (!past.empty() && !strings.empty()) rec.core_stability = lev_jaccard(strings, past);
  }
  state.core_history.push_back(std::move(strings));
  state.top1_history.push_back(top1);

  const std::size_t every = state.cfg.eval_every;
  if (every > 0 && state.iteration % every == 0) rec.comparison = clean_slate_compare(state);
  return rec;
}

}  // namespace

nlohmann::ordered_json to_json(const MetricRecord& r) {
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["target_count"] = r.target_count;
  j["edge_cost"] = r.edge_cost;
  j["intermediate_count"] = r.intermediate_count;
  j["single_piece_targets"] = r.single_piece_targets;
  j["normalized_cost"] = r.normalized_cost;
  j["avg_depth"] = r.avg_depth;
  j["avg_node_length"] = r.avg_node_length;
  j["diversity"] = r.diversity;
  j["core_size"] = r.core_size;
  j["flat_core_size"] = r.flat_core_size;
  j["h_score"] = optional_json(r.h_score);
  j["core_stability"] = optional_json(r.core_stability);
  j["acceptance_likelihood"] = optional_json(r.acceptance_likelihood);
  j["trials"] = optional_json(r.trials);
  j["cost_ratio"] = optional_json(r.cost_ratio);
  if (r.comparison) {
    const ComparatorRecord& c = *r.comparison;
    j["pid"] = c.pid;
    j["pid_upper_bound"] = c.pid_upper_bound;
    j["cs_edge_cost"] = c.cs_edge_cost;
    j["cs_core_similarity"] = c.core_similarity;
    j["cs_avg_depth"] = c.cs_avg_depth;
    j["cs_h_score"] = optional_json(c.cs_h_score);
  } else {
    for (const char* key :
         {"pid", "pid_upper_bound", "cs_edge_cost", "cs_core_similarity", "cs_avg_depth",
          "cs_h_score"}) {
      j[key] = nullptr;
    }
  }
  j["top1_core"] = r.top1_core;
  j["core_strings"] = r.core_strings;
  j["core_centrality"] = r.core_centrality;
  return j;
}

RunState::RunState(const RunConfig& config, std::uint64_t run_seed)
    : cfg(config),
      seed(run_seed),
      dag(Alphabet{static_cast<std::uint32_t>(config.n)}),
      rng(run_seed),
      symbols(SymbolTable::for_alphabet(Alphabet{static_cast<std::uint32_t>(config.n)})) {}

RunState init_run(const RunConfig& cfg, std::uint64_t seed, std::ostream* events) {
  cfg.validate();
  RunState state(cfg, seed);
  state.events = events;

  GenModelConfig rnd = cfg.model;
  rnd.model = GenModel::RND;
  Rng gen(state.rng.next());
  const Batch initial = gen_rnd(state.dag, rnd, cfg.s, gen);
  state.dag = glexis_build(state.dag.alphabet(), initial.targets);
  for (const SymbolString& t : initial.targets) state.fifo.push_back(*state.dag.find_target(t));

  if (events) {
    *events << "init seed=" << seed << " targets=" << cfg.s
            << " edge_cost=" << state.dag.edge_cost() << '\n';
  }
  state.history.push_back(measure(state));
  return state;
}

const MetricRecord& step(RunState& state) {
  const RunConfig& cfg = state.cfg;
  ++state.iteration;

  const std::uint64_t sub_seed = state.rng.next();
  Rng gen(sub_seed);
  const Batch batch = generate(state.dag, cfg.model, cfg.b, gen);

  std::optional<double> cost_ratio;
  std::optional<Batch> paired;
  if (cfg.paired_mr && cfg.model.model == GenModel::MRS) {
    GenModelConfig mr = cfg.model;
    mr.model = GenModel::MR;
    Rng paired_gen(sub_seed);
    paired = generate(state.dag, mr, cfg.b, paired_gen);
    const auto mine = batch.mean_accepted_cost();
    const auto theirs = paired->mean_accepted_cost();
    if (mine && theirs && *theirs > 0.0) cost_ratio = *mine / *theirs;
  }
  if (state.events) {
    log_trials(*state.events, state.iteration, cfg.model.model, batch, "model", state.symbols);
    if (paired) log_trials(*state.events, state.iteration, GenModel::MR, *paired, "paired",
                           state.symbols);
  }

  const std::size_t after = state.dag.target_count() + batch.targets.size();
  std::vector<NodeId> removals;
  for (std::size_t excess = after > cfg.T_s ? after - cfg.T_s : 0; excess > 0; --excess) {
    removals.push_back(state.fifo.front());
    state.fifo.pop_front();
  }
  const IncrementalReport report = incremental_step(state.dag, batch.targets, removals);
  for (NodeId t : report.expansion.targets) state.fifo.push_back(t);

  if (state.events) {
    *state.events << "iter=" << state.iteration << " added=" << report.expansion.targets.size()
                  << " new_intermediates=" << report.expansion.stage2.size()
                  << " removed=" << report.pruning.removed.size()
                  << " inlined=" << report.pruning.inlined.size()
                  << " edge_cost=" << state.dag.edge_cost() << '\n';
  }
  if (cfg.validate_steps) {
    const ValidationReport problems = validate_dag(state.dag);
    if (!problems.empty()) {
      throw LexisError("invalid DAG after iteration " + std::to_string(state.iteration) + ": " +
                       to_string(problems.front().kind) + " at node " +
                       std::to_string(problems.front().node.value) + " " +
                       problems.front().detail);
    }
  }

  MetricRecord rec = measure(state);
  rec.acceptance_likelihood = batch.acceptance_likelihood();
  rec.trials = batch.trials.size();
  rec.cost_ratio = cost_ratio;
  state.history.push_back(std::move(rec));
  return state.history.back();
}

ComparatorRecord clean_slate_compare(const RunState& state) {
  ComparatorRecord out = clean_slate_compare(state.dag, core_options(state.cfg));
  out.iteration = state.iteration;
  return out;
}

ComparatorRecord clean_slate_compare(const LexisDag& inc, const CoreOptions& opts) {
  const LexisDag cs = clean_slate(inc);
  ComparatorRecord out;
  out.inc_edge_cost = inc.edge_cost();
  out.cs_edge_cost = cs.edge_cost();
  out.pid = pid(inc, cs);
  out.pid_upper_bound =
      static_cast<double>(inc.total_target_length()) / static_cast<double>(cs.edge_cost());
  out.inc_avg_depth = avg_depth(inc);
  out.cs_avg_depth = avg_depth(cs);

  const CoreSet inc_core = g_core(inc, opts);
  const CoreSet cs_core = g_core(cs, opts);
  const auto inc_strings = member_strings(inc, inc_core);
  const auto cs_strings = member_strings(cs, cs_core);
  out.core_similarity =
      inc_strings.empty() || cs_strings.empty() ? 0.0 : lev_jaccard(inc_strings, cs_strings);
  out.inc_h_score = h_or_empty(inc, inc_core, flat_core(inc, opts.tau));
  out.cs_h_score = h_or_empty(cs, cs_core, flat_core(cs, opts.tau));
  return out;
}

RunResult simulate(const RunConfig& cfg, std::uint64_t seed, std::ostream* events,
                   const StepObserver& observer) {
  RunState state = init_run(cfg, seed, events);
  if (observer) observer(state);
  for (std::size_t i = 0; i < cfg.iterations; ++i) {
    step(state);
    if (observer) observer(state);
  }
  RunResult out;
  out.seed = seed;
  out.records = std::move(state.history);
  out.top1_history = std::move(state.top1_history);
  out.stasis_tight = stasis_periods(out.top1_history, 0.1, cfg.stasis_min_length);
  out.stasis_loose = stasis_periods(out.top1_history, 0.2, cfg.stasis_min_length);
  return out;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t run) { return mix_seed(base, run); }

std::string summary_csv(const std::vector<RunResult>& runs) {
  struct Column {
    const char* name;
    std::function<std::optional<double>(const MetricRecord&)> get;
  };
  auto plain = [](auto field) {
    return [field](const MetricRecord& r) -> std::optional<double> {
      return static_cast<double>(r.*field);
    };
  };
  auto opt = [](auto field) {
    return [field](const MetricRecord& r) -> std::optional<double> {
      const auto& v = r.*field;
      if (!v) return std::nullopt;
      return static_cast<double>(*v);
    };
  };
  auto cmp = [](auto field) {
    return [field](const MetricRecord& r) -> std::optional<double> {
      if (!r.comparison) return std::nullopt;
      return static_cast<double>((*r.comparison).*field);
    };
  };
  const std::vector<Column> columns = {
      {"target_count", plain(&MetricRecord::target_count)},
      {"edge_cost", plain(&MetricRecord::edge_cost)},
      {"intermediate_count", plain(&MetricRecord::intermediate_count)},
      {"normalized_cost", plain(&MetricRecord::normalized_cost)},
      {"avg_depth", plain(&MetricRecord::avg_depth)},
      {"avg_node_length", plain(&MetricRecord::avg_node_length)},
      {"diversity", plain(&MetricRecord::diversity)},
      {"core_size", plain(&MetricRecord::core_size)},
      {"flat_core_size", plain(&MetricRecord::flat_core_size)},
      {"h_score", opt(&MetricRecord::h_score)},
      {"core_stability", opt(&MetricRecord::core_stability)},
      {"acceptance_likelihood", opt(&MetricRecord::acceptance_likelihood)},
      {"cost_ratio", opt(&MetricRecord::cost_ratio)},
      {"pid", cmp(&ComparatorRecord::pid)},
      {"cs_core_similarity", cmp(&ComparatorRecord::core_similarity)},
      {"cs_avg_depth", cmp(&ComparatorRecord::cs_avg_depth)},
  };

  std::ostringstream out;
  out << "iteration,runs";
  for (const Column& c : columns) out << ',' << c.name;
  out << '\n';
  std::size_t rows = 0;
  for (const RunResult& r : runs) rows = std::max(rows, r.records.size());
  out << std::setprecision(10);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t present = 0;
    for (const RunResult& r : runs) present += i < r.records.size();
    out << i << ',' << present;
    for (const Column& c : columns) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const RunResult& r : runs) {
        if (i >= r.records.size()) continue;
        if (auto v = c.get(r.records[i])) {
          sum += *v;
          ++count;
        }
      }
      out << ',';
      if (count > 0) out << sum / static_cast<double>(count);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json stasis_json(const RunResult& run, const SymbolTable& symbols) {
  auto one = [&](const StasisAnalysis& a, double threshold) {
    nlohmann::ordered_json j;
    j["max_distance"] = threshold;
    j["fraction_in_stasis"] = a.fraction_in_stasis;
    auto periods = nlohmann::ordered_json::array();
    for (const StasisPeriod& p : a.periods) {
      periods.push_back({{"start", p.start},
                         {"end", p.end},
                         {"top1", symbols.render(run.top1_history[p.start])}});
    }
    j["periods"] = std::move(periods);
    j["cross_distances"] = a.cross_distances;
    return j;
  };
  nlohmann::ordered_json j;
  j["seed"] = run.seed;
  j["tight"] = one(run.stasis_tight, 0.1);
  j["loose"] = one(run.stasis_loose, 0.2);
  return j;
}

std::vector<RunResult> run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                      std::size_t jobs) {
  cfg.validate();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw LexisError("cannot create " + out_dir.string() + ": " + ec.message());
  {
    std::ofstream out(out_dir / "config.txt");
    if (!out) throw LexisError("cannot write " + (out_dir / "config.txt").string());
    out << to_text(cfg);
  }

  const SymbolTable symbols =
      SymbolTable::for_alphabet(Alphabet{static_cast<std::uint32_t>(cfg.n)});
  std::vector<RunResult> results(cfg.runs);
  std::vector<std::exception_ptr> failures(cfg.runs);

  auto one_run = [&](std::size_t r) {
    const fs::path dir = out_dir / ("run_" + std::to_string(r));
    fs::create_directories(dir);
    std::ofstream metrics(dir / "metrics.jsonl");
    std::ofstream events(dir / "events.log");
    if (!metrics || !events) throw LexisError("cannot write run files under " + dir.string());

    std::size_t next_snapshot = 0;
    auto observer = [&](const RunState& state) {
      metrics << to_json(state.history.back()).dump() << '\n';
      while (next_snapshot < cfg.snapshot_at.size() &&
             cfg.snapshot_at[next_snapshot] < state.iteration) {
        ++next_snapshot;
      }
      if (next_snapshot < cfg.snapshot_at.size() &&
          cfg.snapshot_at[next_snapshot] == state.iteration) {
        const std::string stem = "snapshot_" + std::to_string(state.iteration);
        save_snapshot(state.dag, dir / (stem + ".json"));
        save_dot(state.dag, dir / (stem + ".dot"), cfg.dot_label_width);
        ++next_snapshot;
      }
    };
    results[r] = simulate(cfg, run_seed(cfg.rng_seed, r), &events, observer);
    std::ofstream stasis(dir / "stasis.json");
    stasis << stasis_json(results[r], symbols).dump(1) << '\n';
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.runs; r = next++) {
      try {
        one_run(r);
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, cfg.runs);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::ofstream summary(out_dir / "summary.csv");
  if (!summary) throw LexisError("cannot write " + (out_dir / "summary.csv").string());
  summary << summary_csv(results);
  return results;
}

}  // namespace evolexis
