#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "evolexis/lexis_dag.hpp"

namespace evolexis {

/// Snapshot layout: {"alphabet": n, "edge_cost": E, "nodes": [{"id", "kind",
/// "str": [symbols], "pieces": [ids]}]} with sources omitted (they are
/// implied by the alphabet). Edge indices follow from piece order.
[[nodiscard]] nlohmann::ordered_json to_json(const LexisDag& dag);
[[nodiscard]] LexisDag dag_from_json(const nlohmann::json& doc);

void save_snapshot(const LexisDag& dag, const std::filesystem::path& path);
[[nodiscard]] LexisDag load_snapshot(const std::filesystem::path& path);

/// Graphviz rendering. Nodes appear in id order; labels longer than
/// `label_width` characters are cut and end in "..". Edge labels carry the
/// 1-based concatenation index.
[[nodiscard]] std::string to_dot(const LexisDag& dag, std::size_t label_width = 24);
void save_dot(const LexisDag& dag, const std::filesystem::path& path,
              std::size_t label_width = 24);

}  // namespace evolexis
