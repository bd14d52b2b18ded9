#include "evolexis/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t to_size(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + value + "'");
  }
}

double to_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (k < 2) throw ConfigError("k must be at least 2");
  if (b < 1 || b > T_s) throw ConfigError("batch size must satisfy 1 <= b <= T_s");
  if (s < 1 || s > T_s) throw ConfigError("initial targets must satisfy 1 <= s <= T_s");
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (tau < 0.0 || tau > 1.0) throw ConfigError("tau must lie in [0, 1]");
  if (model.beta < 0.0) throw ConfigError("beta must be non-negative");
  if (model.k != k) throw ConfigError("model length does not match k");
  if ((model.model == GenModel::MR || model.model == GenModel::MRS) && s < 2) {
    throw ConfigError("recombination models need s >= 2");
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "s") cfg.s = to_size(key, value);
    else if (key == "n") cfg.n = to_size(key, value);
    else if (key == "k") cfg.k = to_size(key, value);
    else if (key == "b") cfg.b = to_size(key, value);
    else if (key == "T_s") cfg.T_s = to_size(key, value);
    else if (key == "iterations") cfg.iterations = to_size(key, value);
    else if (key == "runs") cfg.runs = to_size(key, value);
    else if (key == "model") cfg.model.model = parse_gen_model(value);
    else if (key == "beta") cfg.model.beta = to_real(key, value);
    else if (key == "tau") cfg.tau = to_real(key, value);
    else if (key == "eval_every") cfg.eval_every = to_size(key, value);
    else if (key == "rng_seed") cfg.rng_seed = to_size(key, value);
    else if (key == "stability_window") cfg.stability_window = to_size(key, value);
    else if (key == "stasis_min_length") cfg.stasis_min_length = to_size(key, value);
    else if (key == "stall_limit") cfg.model.stall_limit = to_size(key, value);
    else if (key == "paired_mr") cfg.paired_mr = to_bool(key, value);
    else if (key == "validate_steps") cfg.validate_steps = to_bool(key, value);
    else if (key == "dot_label_width") cfg.dot_label_width = to_size(key, value);
    else if (key == "ratio") {
      if (value == "weighted") cfg.model.ratio = RatioForm::Weighted;
      else if (value == "printed") cfg.model.ratio = RatioForm::Printed;
      else throw ConfigError("ratio must be weighted or printed");
    } else if (key == "costing") {
      if (value == "parse") cfg.model.costing = CostModel::Mode::ParseOnly;
      else if (value == "committed") cfg.model.costing = CostModel::Mode::Committed;
      else throw ConfigError("costing must be parse or committed");
    } else if (key == "core_candidates") {
      if (value == "all") cfg.core_candidates = CoreCandidates::IntermediatesAndSources;
      else if (value == "intermediates") cfg.core_candidates = CoreCandidates::IntermediatesOnly;
      else throw ConfigError("core_candidates must be all or intermediates");
    } else if (key == "snapshot_at") {
      cfg.snapshot_at.clear();
      std::istringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.snapshot_at.push_back(to_size(key, item));
      }
      std::sort(cfg.snapshot_at.begin(), cfg.snapshot_at.end());
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.model.k = cfg.k;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_text(const RunConfig& cfg) {
  std::ostringstream out;
  out << "s = " << cfg.s << "\n"
      << "n = " << cfg.n << "\n"
      << "k = " << cfg.k << "\n"
      << "b = " << cfg.b << "\n"
      << "T_s = " << cfg.T_s << "\n"
      << "iterations = " << cfg.iterations << "\n"
      << "runs = " << cfg.runs << "\n"
      << "model = " << to_string(cfg.model.model) << "\n"
      << "beta = " << cfg.model.beta << "\n"
      << "ratio = " << (cfg.model.ratio == RatioForm::Weighted ? "weighted" : "printed") << "\n"
      << "costing = "
      << (cfg.model.costing == CostModel::Mode::ParseOnly ? "parse" : "committed") << "\n"
      << "stall_limit = " << cfg.model.stall_limit << "\n"
      << "tau = " << cfg.tau << "\n"
      << "core_candidates = "
      << (cfg.core_candidates == CoreCandidates::IntermediatesAndSources ? "all"
                                                                          : "intermediates")
      << "\n"
      << "eval_every = " << cfg.eval_every << "\n"
      << "rng_seed = " << cfg.rng_seed << "\n"
      << "stability_window = " << cfg.stability_window << "\n"
      << "stasis_min_length = " << cfg.stasis_min_length << "\n"
      << "paired_mr = " << (cfg.paired_mr ? "true" : "false") << "\n"
      << "validate_steps = " << (cfg.validate_steps ? "true" : "false") << "\n"
      << "dot_label_width = " << cfg.dot_label_width << "\n";
  if (!cfg.snapshot_at.empty()) {
    out << "snapshot_at = ";
    for (std::size_t i = 0; i < cfg.snapshot_at.size(); ++i) {
      out << (i ? "," : "") << cfg.snapshot_at[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace evolexis
