#include "ergm/export.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "ergm/csv.hpp"
#include "ergm/errors.hpp"
#include "json.hpp"

namespace ergm {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

void check_sizes(const DirectedGraph& g, const NodeTable& attrs) {
  if (g.node_count() != attrs.size()) {
    throw DimensionError(fmt::format("graph has {} nodes but the attribute table has {}", g.node_count(), attrs.size()));
  }
}

}  // namespace

GraphFormat parse_graph_format(std::string_view s) {
  const std::string v = to_lower(s);
  if (v == "graphml") return GraphFormat::graphml;
  if (v == "dot") return GraphFormat::dot;
  if (v == "json" || v == "json-edgelist") return GraphFormat::json_edgelist;
  throw ConfigError(fmt::format("unknown graph format '{}' (expected graphml, dot or json-edgelist)", s));
}

std::string to_graphml(const DirectedGraph& g, const NodeTable& attrs) {
  check_sizes(g, attrs);
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out += "  <key id=\"facilitator\" for=\"node\" attr.name=\"facilitator\" attr.type=\"boolean\"/>\n";
  for (const auto& a : attrs.attributes()) {
    out += fmt::format("  <key id=\"{0}\" for=\"node\" attr.name=\"{0}\" attr.type=\"string\"/>\n", xml_escape(a.name));
  }
  out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (NodeId v = 0; v < attrs.size(); ++v) {
    out += fmt::format("    <node id=\"{}\">\n", xml_escape(attrs.id(v)));
    out += fmt::format("      <data key=\"facilitator\">{}</data>\n", attrs.facilitator(v) ? "true" : "false");
    for (const auto& a : attrs.attributes()) {
      out += fmt::format("      <data key=\"{}\">{}</data>\n", xml_escape(a.name), xml_escape(a.value(v)));
    }
    out += "    </node>\n";
  }
  for (const Edge& e : g.edges()) {
    out += fmt::format("    <edge source=\"{}\" target=\"{}\"/>\n", xml_escape(attrs.id(e.sender)),
                       xml_escape(attrs.id(e.receiver)));
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string to_dot(const DirectedGraph& g, const NodeTable& attrs) {
  check_sizes(g, attrs);
  std::string out = "digraph G {\n";
  for (NodeId v = 0; v < attrs.size(); ++v) {
    out += "  " + dot_quote(attrs.id(v));
    if (!attrs.attributes().empty()) {
      out += " [";
      for (std::size_t k = 0; k < attrs.attributes().size(); ++k) {
        const auto& a = attrs.attributes()[k];
        if (k > 0) out += ", ";
        out += a.name + "=" + dot_quote(a.value(v));
      }
      out += "]";
    }
    out += ";\n";
  }
  for (const Edge& e : g.edges()) {
    out += fmt::format("  {} -> {};\n", dot_quote(attrs.id(e.sender)), dot_quote(attrs.id(e.receiver)));
  }
  out += "}\n";
  return out;
}

std::string to_json_edgelist(const DirectedGraph& g, const NodeTable& attrs) {
  check_sizes(g, attrs);
  nlohmann::ordered_json j;
  nlohmann::ordered_json levels = nlohmann::ordered_json::object();
  for (const auto& a : attrs.attributes()) levels[a.name] = a.levels;
  j["levels"] = std::move(levels);
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId v = 0; v < attrs.size(); ++v) {
    nlohmann::ordered_json node;
    node["id"] = attrs.id(v);
    node["facilitator"] = static_cast<bool>(attrs.facilitator(v));
    for (const auto& a : attrs.attributes()) node[a.name] = a.value(v);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"sender_id", attrs.id(e.sender)}, {"receiver_id", attrs.id(e.receiver)}});
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

JsonNetwork from_json_edgelist(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ParseError(fmt::format("json-edgelist: {}", e.what()), e.byte);
  }
  try {
    std::vector<std::string> ids;
    std::vector<bool> fac;
    for (const auto& node : j.at("nodes")) {
      ids.push_back(node.at("id").get<std::string>());
      fac.push_back(node.value("facilitator", false));
    }
    NodeTable table(ids, fac);
    if (j.contains("levels")) {
      for (const auto& [name, lv] : j.at("levels").items()) {
        CategoricalAttribute probe{name, lv.get<std::vector<std::string>>(), {}};
        std::vector<std::uint16_t> codes;
        for (const auto& node : j.at("nodes")) {
          const auto value = node.at(name).get<std::string>();
          auto code = probe.level_code(value);
          if (!code) {
            throw ValidationError(fmt::format("node '{}': value '{}' is not a declared level of '{}'",
                                              node.at("id").get<std::string>(), value, name));
          }
          codes.push_back(*code);
        }
        table.add_attribute(name, probe.levels, std::move(codes));
      }
    }
    std::vector<InteractionEvent> events;
    for (const auto& e : j.at("edges")) {
      events.push_back({e.at("sender_id").get<std::string>(), e.at("receiver_id").get<std::string>(), 1, 0});
    }
    // Isolated nodes have no events, so the node set comes from the table
    // (in id order) and the edges from the assembled events.
    std::vector<NodeId> order(table.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return table.id(a) < table.id(b); });
    NodeTable ordered = table.select(order);
    const Assembly as = assemble_network(events, ordered, false);
    DirectedGraph g(ordered.size());
    for (const auto& e : as.graph.edges()) {
      g.add_edge(*ordered.find(as.nodes.id(e.sender)), *ordered.find(as.nodes.id(e.receiver)));
    }
    return {std::move(g), std::move(ordered)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("json-edgelist: {}", e.what()), 0);
  }
}

void export_graph(const DirectedGraph& g, const NodeTable& attrs, GraphFormat format,
                  const std::filesystem::path& path) {
  std::string body;
  switch (format) {
    case GraphFormat::graphml: body = to_graphml(g, attrs); break;
    case GraphFormat::dot: body = to_dot(g, attrs); break;
    case GraphFormat::json_edgelist: body = to_json_edgelist(g, attrs); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << body;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace ergm
