#include "evolexis/serialize.hpp"

#include <fstream>
#include <sstream>

#include "evolexis/errors.hpp"

namespace evolexis {

namespace {

NodeKind kind_from_text(const std::string& text) {
  if (text == "source") return NodeKind::Source;
  if (text == "intermediate") return NodeKind::Intermediate;
  if (text == "target") return NodeKind::Target;
  throw LexisError("unknown node kind '" + text + "' in snapshot");
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const LexisDag& dag) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = dag.alphabet().size;
  doc["edge_cost"] = dag.edge_cost();
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId id : dag.non_sources()) {
    nlohmann::ordered_json node;
    node["id"] = id.value;
    node["kind"] = to_string(dag.kind(id));
    node["str"] = dag.str(id);
    auto pieces = nlohmann::ordered_json::array();
    for (NodeId p : dag.pieces(id)) pieces.push_back(p.value);
    node["pieces"] = std::move(pieces);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

LexisDag dag_from_json(const nlohmann::json& doc) {
  try {
    const Alphabet alphabet{doc.at("alphabet").get<std::uint32_t>()};
    std::vector<NodeRecord> records;
    for (Symbol s = 0; s < alphabet.size; ++s) {
      records.push_back(NodeRecord{NodeId{s}, NodeKind::Source, SymbolString{s}, {}});
    }
    for (const auto& node : doc.at("nodes")) {
      NodeRecord rec;
      rec.id = NodeId{node.at("id").get<std::uint32_t>()};
      rec.kind = kind_from_text(node.at("kind").get<std::string>());
      rec.str = node.at("str").get<SymbolString>();
      for (const auto& p : node.at("pieces")) rec.pieces.push_back(NodeId{p.get<std::uint32_t>()});
      records.push_back(std::move(rec));
    }
    return LexisDag::from_records(alphabet, records);
  } catch (const nlohmann::json::exception& e) {
    throw LexisError(std::string("malformed DAG snapshot: ") + e.what());
  }
}

void save_snapshot(const LexisDag& dag, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw LexisError("cannot write snapshot " + path.string());
  out << to_json(dag).dump(1) << "\n";
}

LexisDag load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LexisError("cannot read snapshot " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw LexisError(path.string() + ": " + e.what());
  }
  return dag_from_json(doc);
}

std::string to_dot(const LexisDag& dag, std::size_t label_width) {
  const SymbolTable symbols = SymbolTable::for_alphabet(dag.alphabet());
  std::ostringstream out;
  out << "digraph lexis {\n  rankdir=BT;\n";
  for (NodeId id : dag.all_nodes()) {
    std::string label = symbols.render(dag.str(id));
    if (label.size() > label_width) {
      label = label.substr(0, label_width > 2 ? label_width - 2 : 0) + "..";
    }
    const char* shape = "ellipse";
    if (dag.kind(id) == NodeKind::Source) shape = "plaintext";
    if (dag.kind(id) == NodeKind::Target) shape = "box";
    out << "  n" << id.value << " [label=\"" << dot_escape(label) << "\", shape=" << shape
        << "];\n";
  }
  for (const Edge& e : dag.edges()) {
    out << "  n" << e.from.value << " -> n" << e.to.value << " [label=\"" << e.index << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

void save_dot(const LexisDag& dag, const std::filesystem::path& path, std::size_t label_width) {
  std::ofstream out(path);
  if (!out) throw LexisError("cannot write " + path.string());
  out << to_dot(dag, label_width);
}

}  // namespace evolexis
