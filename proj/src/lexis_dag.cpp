#include "evolexis/lexis_dag.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

std::string id_text(NodeId id) { return "node " + std::to_string(id.value); }

}  // namespace

LexisDag::LexisDag(Alphabet alphabet) : alphabet_(alphabet) {
  if (alphabet_.size < 2) throw ConfigError("alphabet needs at least two symbols");
  slots_.resize(alphabet_.size);
  for (Symbol s = 0; s < alphabet_.size; ++s) {
    slots_[s].alive = true;
    slots_[s].kind = NodeKind::Source;
    slots_[s].str = {s};
  }
}

LexisDag LexisDag::from_records(Alphabet alphabet, std::span<const NodeRecord> records) {
  LexisDag dag(alphabet);
  std::vector<NodeRecord> sorted(records.begin(), records.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  // Pieces may name nodes with larger ids (a target rewired to a later
  // intermediate), so slots are laid out first and linked afterwards.
  for (const NodeRecord& rec : sorted) {
    if (rec.kind == NodeKind::Source) {
      if (rec.id.value >= alphabet.size || rec.str != SymbolString{rec.id.value}) {
        throw LexisError("snapshot source record does not match alphabet: " + id_text(rec.id));
      }
      continue;
    }
    if (rec.id.value < dag.slots_.size()) {
      throw LexisError("snapshot node ids must be unique and above the sources: " +
                       id_text(rec.id));
    }
    if (!alphabet.contains(rec.str)) {
      throw LexisError("snapshot string uses symbols outside the alphabet: " + id_text(rec.id));
    }
    dag.slots_.resize(rec.id.value + 1);
    Slot& slot = dag.slots_.back();
    slot.alive = true;
    slot.kind = rec.kind;
    slot.str = rec.str;
    slot.pieces = rec.pieces;
    dag.live_.push_back(rec.id);
    dag.edge_cost_ += rec.pieces.size();
    if (rec.kind == NodeKind::Target) {
      dag.target_count_ += 1;
      dag.target_length_ += rec.str.size();
      dag.target_index_.emplace(rec.str, rec.id);
    } else {
      dag.intermediate_index_.emplace(rec.str, rec.id);
    }
  }
  for (NodeId v : dag.live_) {
    for (NodeId p : dag.slots_[v.value].pieces) {
      if (!dag.contains(p)) throw LexisError("piece refers to missing " + id_text(p));
      dag.slots_[p.value].out_degree += 1;
    }
  }
  return dag;
}

bool LexisDag::contains(NodeId id) const {
  return id.value < slots_.size() && slots_[id.value].alive;
}

const LexisDag::Slot& LexisDag::slot(NodeId id) const {
  if (!contains(id)) throw LexisError("no such node: " + id_text(id));
  return slots_[id.value];
}

LexisDag::Slot& LexisDag::slot(NodeId id) {
  if (!contains(id)) throw LexisError("no such node: " + id_text(id));
  return slots_[id.value];
}

NodeId LexisDag::allocate(NodeKind kind, SymbolString str, ParseForm pieces) {
  const NodeId id{static_cast<std::uint32_t>(slots_.size())};
  for (NodeId p : pieces) slot(p).out_degree += 1;
  edge_cost_ += pieces.size();
  if (kind == NodeKind::Target) {
    target_count_ += 1;
    target_length_ += str.size();
    target_index_.emplace(str, id);
  } else if (kind == NodeKind::Intermediate) {
    intermediate_index_.emplace(str, id);
  }
  Slot s;
  s.alive = true;
  s.kind = kind;
  s.str = std::move(str);
  s.pieces = std::move(pieces);
  slots_.push_back(std::move(s));
  live_.push_back(id);
  return id;
}

NodeId LexisDag::insert_node(NodeKind kind, SymbolString str, ParseForm pieces) {
  if (kind == NodeKind::Source) throw LexisError("sources are created with the alphabet");
  if (!alphabet_.contains(str)) throw LexisError("string uses symbols outside the alphabet");
  for (NodeId p : pieces) {
    if (!contains(p)) throw LexisError("piece refers to missing " + id_text(p));
  }
  return allocate(kind, std::move(str), std::move(pieces));
}

SymbolString LexisDag::spell(std::span<const NodeId> tokens) const {
  SymbolString out;
  for (NodeId t : tokens) {
    const SymbolString& s = str(t);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

NodeId LexisDag::add_target(SymbolString s, ParseForm pieces) {
  if (s.empty()) throw LexisError("targets must be non-empty");
  if (!alphabet_.contains(s)) throw LexisError("target uses symbols outside the alphabet");
  if (target_index_.contains(s)) throw DuplicateTargetError("target string already present");
  for (NodeId p : pieces) {
    if (!contains(p) || kind(p) == NodeKind::Target) {
      throw InvalidOccurrenceError("target piece must be a live source or intermediate");
    }
  }
  if (pieces.empty() || spell(pieces) != s) {
    throw InvalidOccurrenceError("pieces do not spell the target string");
  }
  return allocate(NodeKind::Target, std::move(s), std::move(pieces));
}

NodeId LexisDag::add_flat_target(SymbolString s) {
  ParseForm pieces;
  pieces.reserve(s.size());
  for (Symbol sym : s) {
    if (!alphabet_.contains(sym)) throw LexisError("target uses symbols outside the alphabet");
    pieces.push_back(source(sym));
  }
  return add_target(std::move(s), std::move(pieces));
}

NodeId LexisDag::add_intermediate(const SymbolString& s, std::span<const Occurrence> occurrences) {
  // Overlap is checked on character spans before alignment.
  std::vector<Occurrence> sorted(occurrences.begin(), occurrences.end());
  std::sort(sorted.begin(), sorted.end(), [](const Occurrence& a, const Occurrence& b) {
    return a.host != b.host ? a.host < b.host : a.position < b.position;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].host == sorted[i - 1].host &&
        sorted[i].position < sorted[i - 1].position + s.size()) {
      throw OverlapError("occurrences overlap inside " + id_text(sorted[i].host));
    }
  }

  std::vector<TokenRun> runs;
  runs.reserve(occurrences.size());
  for (const Occurrence& occ : occurrences) {
    if (!contains(occ.host) || kind(occ.host) == NodeKind::Source) {
      throw InvalidOccurrenceError("occurrence host must be a live non-source node");
    }
    if (occ.position == 0) throw InvalidOccurrenceError("positions are 1-based");
    const ParseForm& form = pieces(occ.host);
    const std::size_t start = occ.position - 1;
    std::size_t offset = 0;
    std::size_t cursor = 0;
    while (offset < form.size() && cursor < start) cursor += length(form[offset++]);
    if (cursor != start) {
      throw InvalidOccurrenceError("occurrence does not start on a piece boundary in " +
                                   id_text(occ.host));
    }
    std::size_t end = offset;
    std::size_t covered = 0;
    while (end < form.size() && covered < s.size()) covered += length(form[end++]);
    if (covered != s.size()) {
      throw InvalidOccurrenceError("occurrence does not end on a piece boundary in " +
                                   id_text(occ.host));
    }
    runs.push_back(TokenRun{occ.host, offset, end - offset});
  }
  if (!runs.empty() && spell(std::span(pieces(runs.front().host))
                                 .subspan(runs.front().offset, runs.front().length)) != s) {
    throw InvalidOccurrenceError("first occurrence does not spell the requested string");
  }
  return add_intermediate(runs);
}

NodeId LexisDag::add_intermediate(std::span<const TokenRun> runs) {
  if (runs.size() < 2) throw InvalidOccurrenceError("an intermediate needs at least two uses");
  for (const TokenRun& run : runs) {
    if (!contains(run.host) || kind(run.host) == NodeKind::Source) {
      throw InvalidOccurrenceError("run host must be a live non-source node");
    }
    if (run.length == 0 || run.offset + run.length > pieces(run.host).size()) {
      throw InvalidOccurrenceError("run exceeds the host's parse form");
    }
  }
  const TokenRun& first = runs.front();
  ParseForm tokens(pieces(first.host).begin() + static_cast<std::ptrdiff_t>(first.offset),
                   pieces(first.host).begin() + static_cast<std::ptrdiff_t>(first.offset + first.length));
  SymbolString s = spell(tokens);
  if (tokens.size() < 2) throw InvalidOccurrenceError("an intermediate needs at least two pieces");
  if (intermediate_index_.contains(s)) {
    throw DuplicateStringError("string already present as " +
                               id_text(intermediate_index_.at(s)));
  }

  std::vector<TokenRun> ordered(runs.begin(), runs.end());
  std::sort(ordered.begin(), ordered.end(), [](const TokenRun& a, const TokenRun& b) {
    return a.host != b.host ? a.host < b.host : a.offset < b.offset;
  });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const TokenRun& run = ordered[i];
    if (i > 0 && ordered[i - 1].host == run.host &&
        run.offset < ordered[i - 1].offset + ordered[i - 1].length) {
      throw OverlapError("runs overlap inside " + id_text(run.host));
    }
    const ParseForm& form = pieces(run.host);
    if (spell(std::span(form).subspan(run.offset, run.length)) != s) {
      throw InvalidOccurrenceError("run in " + id_text(run.host) +
                                   " does not spell the new string");
    }
  }

  const NodeId fresh = allocate(NodeKind::Intermediate, std::move(s), std::move(tokens));
  // Rewrite right to left within each host so earlier offsets stay valid.
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
    ParseForm& form = slot(it->host).pieces;
    const auto begin = form.begin() + static_cast<std::ptrdiff_t>(it->offset);
    const auto end = begin + static_cast<std::ptrdiff_t>(it->length);
    for (auto p = begin; p != end; ++p) slot(*p).out_degree -= 1;
    *begin = fresh;
    form.erase(begin + 1, end);
    slot(fresh).out_degree += 1;
    edge_cost_ -= it->length - 1;
  }
  return fresh;
}

void LexisDag::detach(NodeId id) {
  Slot& s = slot(id);
  for (NodeId p : s.pieces) slot(p).out_degree -= 1;
  edge_cost_ -= s.pieces.size();
  if (s.kind == NodeKind::Target) {
    target_count_ -= 1;
    target_length_ -= s.str.size();
    target_index_.erase(s.str);
  } else if (s.kind == NodeKind::Intermediate) {
    intermediate_index_.erase(s.str);
  }
  s.alive = false;
  s.pieces.clear();
  s.pieces.shrink_to_fit();
  live_.erase(std::lower_bound(live_.begin(), live_.end(), id));
}

void LexisDag::inline_into_user(NodeId id) {
  NodeId user{};
  bool found = false;
  for (NodeId candidate : live_) {
    const ParseForm& form = pieces(candidate);
    if (std::find(form.begin(), form.end(), id) != form.end()) {
      user = candidate;
      found = true;
      break;
    }
  }
  if (!found) throw LexisError("out-degree bookkeeping lost the user of " + id_text(id));

  const ParseForm replacement = pieces(id);
  ParseForm& form = slot(user).pieces;
  const auto at = std::find(form.begin(), form.end(), id);
  const auto pos = at - form.begin();
  form.erase(at);
  form.insert(form.begin() + pos, replacement.begin(), replacement.end());
  // The replacement pieces move from `id` to `user`; their out-degree holds.
  edge_cost_ += replacement.size() - 1;
  slot(id).out_degree = 0;
  for (NodeId p : replacement) slot(p).out_degree += 1;
  detach(id);
}

PruneReport LexisDag::remove_targets_and_prune(std::span<const NodeId> victims) {
  for (NodeId v : victims) {
    if (!contains(v) || kind(v) != NodeKind::Target) {
      throw NotATargetError(id_text(v) + " is not a target");
    }
  }
  PruneReport report;
  for (NodeId v : victims) {
    if (!contains(v)) continue;  // listed twice
    detach(v);
    report.removed.push_back(v);
  }
  if (victims.empty()) return report;

  while (true) {
    std::vector<NodeId> weak;
    for (NodeId id : live_) {
      if (kind(id) == NodeKind::Intermediate && out_degree(id) < 2) weak.push_back(id);
    }
    if (weak.empty()) break;
    std::sort(weak.begin(), weak.end(), [this](NodeId a, NodeId b) {
      return length(a) != length(b) ? length(a) > length(b) : a < b;
    });
    for (NodeId id : weak) {
      if (!contains(id)) continue;
      if (out_degree(id) == 0) {
        detach(id);
        report.removed.push_back(id);
      } else if (out_degree(id) == 1) {
        inline_into_user(id);
        report.inlined.push_back(id);
      }
    }
  }
  return report;
}

std::vector<Edge> LexisDag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_cost_);
  for (NodeId head : live_) {
    std::uint32_t index = 1;
    for (NodeId p : pieces(head)) {
      out.push_back(Edge{p, head, index});
      index += static_cast<std::uint32_t>(length(p));
    }
  }
  return out;
}

std::vector<NodeId> LexisDag::targets() const {
  std::vector<NodeId> out;
  out.reserve(target_count_);
  for (NodeId id : live_) {
    if (kind(id) == NodeKind::Target) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> LexisDag::intermediates() const {
  std::vector<NodeId> out;
  for (NodeId id : live_) {
    if (kind(id) == NodeKind::Intermediate) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> LexisDag::all_nodes() const {
  std::vector<NodeId> out;
  out.reserve(alphabet_.size + live_.size());
  for (Symbol s = 0; s < alphabet_.size; ++s) out.push_back(source(s));
  out.insert(out.end(), live_.begin(), live_.end());
  return out;
}

std::optional<NodeId> LexisDag::find_intermediate(const SymbolString& s) const {
  auto it = intermediate_index_.find(s);
  if (it == intermediate_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> LexisDag::find_target(const SymbolString& s) const {
  auto it = target_index_.find(s);
  if (it == target_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeRecord> LexisDag::records() const {
  std::vector<NodeRecord> out;
  for (NodeId id : all_nodes()) out.push_back(NodeRecord{id, kind(id), str(id), pieces(id)});
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DanglingPiece: return "dangling-piece";
    case ViolationKind::SourceHasInEdges: return "source-has-in-edges";
    case ViolationKind::TargetHasOutEdges: return "target-has-out-edges";
    case ViolationKind::MissingParse: return "missing-parse";
    case ViolationKind::TooFewPieces: return "too-few-pieces";
    case ViolationKind::BadTiling: return "bad-tiling";
    case ViolationKind::EdgeOrder: return "edge-order";
    case ViolationKind::LowReuse: return "low-reuse";
    case ViolationKind::DuplicateIntermediate: return "duplicate-intermediate";
    case ViolationKind::DuplicateTarget: return "duplicate-target";
    case ViolationKind::DegreeMismatch: return "degree-mismatch";
  }
  return "unknown";
}

ValidationReport validate_dag(const LexisDag& dag) {
  ValidationReport report;
  const std::vector<NodeId> nodes = dag.all_nodes();
  std::vector<std::size_t> uses(dag.id_limit(), 0);
  std::map<SymbolString, NodeId> seen_intermediate;
  std::map<SymbolString, NodeId> seen_target;

  for (NodeId id : nodes) {
    const NodeKind kind = dag.kind(id);
    const ParseForm& form = dag.pieces(id);
    bool dangling = false;
    for (NodeId p : form) {
      if (!dag.contains(p)) {
        report.push_back({ViolationKind::DanglingPiece, id, "piece " + std::to_string(p.value)});
        dangling = true;
      } else {
        uses[p.value] += 1;
      }
    }
    if (kind == NodeKind::Source) {
      if (!form.empty()) report.push_back({ViolationKind::SourceHasInEdges, id, ""});
      continue;
    }
    if (form.empty()) {
      report.push_back({ViolationKind::MissingParse, id, ""});
      continue;
    }
    if (kind == NodeKind::Intermediate && form.size() < 2) {
      report.push_back({ViolationKind::TooFewPieces, id, "intermediate with one piece"});
    }
    if (dangling) continue;

    SymbolString spelled;
    for (NodeId p : form) {
      const SymbolString& s = dag.str(p);
      spelled.insert(spelled.end(), s.begin(), s.end());
      if (dag.kind(p) == NodeKind::Target) {
        report.push_back({ViolationKind::TargetHasOutEdges, p, "used by node " +
                                                                   std::to_string(id.value)});
      }
      // Edges run from shorter to longer strings; equal length is only
      // possible for a target tiled by a single piece.
      const bool shorter = s.size() < dag.length(id);
      const bool single_piece_target = kind == NodeKind::Target && form.size() == 1;
      if (!shorter && !single_piece_target) {
        report.push_back({ViolationKind::EdgeOrder, id, "piece " + std::to_string(p.value)});
      }
    }
    if (spelled != dag.str(id)) report.push_back({ViolationKind::BadTiling, id, ""});

    auto& seen = kind == NodeKind::Intermediate ? seen_intermediate : seen_target;
    auto [it, inserted] = seen.emplace(dag.str(id), id);
    if (!inserted) {
      report.push_back({kind == NodeKind::Intermediate ? ViolationKind::DuplicateIntermediate
                                                       : ViolationKind::DuplicateTarget,
                        id, "same string as node " + std::to_string(it->second.value)});
    }
  }

  for (NodeId id : nodes) {
    if (uses[id.value] != dag.out_degree(id)) {
      report.push_back({ViolationKind::DegreeMismatch, id,
                        "cached " + std::to_string(dag.out_degree(id)) + ", counted " +
                            std::to_string(uses[id.value])});
    }
    if (dag.kind(id) == NodeKind::Intermediate && uses[id.value] < 2) {
      report.push_back({ViolationKind::LowReuse, id,
                        "out-degree " + std::to_string(uses[id.value])});
    }
  }
  return report;
}

std::size_t edge_cost(const LexisDag& dag) {
  std::size_t total = 0;
  for (NodeId id : dag.non_sources()) total += dag.in_degree(id);
  return total;
}

SymbolString expand_to_sources(const LexisDag& dag, NodeId id) {
  if (dag.kind(id) == NodeKind::Source) return dag.str(id);
  SymbolString out;
  for (NodeId p : dag.pieces(id)) {
    SymbolString part = expand_to_sources(dag, p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace evolexis
