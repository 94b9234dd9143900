#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"

namespace ergm {

enum class GraphFormat { graphml, dot, json_edgelist };

/// "graphml", "dot", "json" or "json-edgelist". Throws ConfigError.
GraphFormat parse_graph_format(std::string_view s);

std::string to_graphml(const DirectedGraph& g, const NodeTable& attrs);
std::string to_dot(const DirectedGraph& g, const NodeTable& attrs);
/// {"nodes": [{"id", "facilitator", <attribute>: <level>...}], "levels": {...},
///  "edges": [{"sender_id", "receiver_id"}]}
std::string to_json_edgelist(const DirectedGraph& g, const NodeTable& attrs);

struct JsonNetwork {
  DirectedGraph graph;
  NodeTable nodes;
};

/// Reads a json-edgelist document back through the ingest path (attribute
/// validation and id-ordered assembly).
JsonNetwork from_json_edgelist(std::string_view text);

/// Writes `g` in the chosen format. Throws IoError if the file cannot be written.
void export_graph(const DirectedGraph& g, const NodeTable& attrs, GraphFormat format,
                  const std::filesystem::path& path);

}  // namespace ergm
