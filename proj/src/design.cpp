#include "ergm/design.hpp"

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

DyadDesign::DyadDesign(std::vector<std::string> term_names)
    : names_(std::move(term_names)), columns_(names_.size()) {}

void DyadDesign::reserve(std::size_t rows) {
  for (auto& c : columns_) c.reserve(rows);
  dyads_.reserve(rows);
  response_.reserve(rows);
  periods_.reserve(rows);
}

void DyadDesign::add_row(Dyad d, bool tie, std::span<const double> x, std::uint32_t period) {
  if (x.size() != columns_.size()) {
    throw DimensionError(fmt::format("row has {} values for {} terms", x.size(), columns_.size()));
  }
  for (std::size_t c = 0; c < x.size(); ++c) columns_[c].push_back(x[c]);
  dyads_.push_back(d);
  response_.push_back(tie ? 1.0 : 0.0);
  periods_.push_back(period);
}

void DyadDesign::append(const DyadDesign& other) {
  if (other.names_ != names_) throw DimensionError("cannot stack designs with different terms");
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    columns_[c].insert(columns_[c].end(), other.columns_[c].begin(), other.columns_[c].end());
  }
  dyads_.insert(dyads_.end(), other.dyads_.begin(), other.dyads_.end());
  response_.insert(response_.end(), other.response_.begin(), other.response_.end());
  periods_.insert(periods_.end(), other.periods_.begin(), other.periods_.end());
}

void DyadDesign::add_column(std::string name, std::vector<double> values) {
  if (values.size() != n_rows()) {
    throw DimensionError(fmt::format("column '{}' has {} values for {} rows", name, values.size(), n_rows()));
  }
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

std::vector<Dyad> all_dyads(std::size_t n) {
  std::vector<Dyad> out;
  out.reserve(n * (n > 0 ? n - 1 : 0));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j) out.push_back({i, j});
    }
  }
  return out;
}

DyadDesign build_design(const DirectedGraph& stats_graph, const DirectedGraph& response_graph,
                        const ModelEvaluator& eval, std::span<const Dyad> free_dyads, std::uint32_t period) {
  if (free_dyads.empty()) throw EmptyDesignError("no free dyads to model");
  if (stats_graph.node_count() != eval.node_count() || response_graph.node_count() != eval.node_count()) {
    throw DimensionError(fmt::format("graphs ({} and {} nodes) do not match the attribute table ({} nodes)",
                                     stats_graph.node_count(), response_graph.node_count(), eval.node_count()));
  }
  DyadDesign design(eval.spec().names());
  design.reserve(free_dyads.size());
  std::vector<double> x(eval.size());
  const auto n = stats_graph.node_count();
  for (const Dyad& d : free_dyads) {
    if (d.sender == d.receiver) {
      throw InvalidDyadError(fmt::format("dyad ({}, {}) is a self-pair", d.sender, d.receiver));
    }
    if (d.sender >= n || d.receiver >= n) {
      throw OutOfRangeError(fmt::format("dyad ({}, {}) is out of range", d.sender, d.receiver));
    }
    eval.change_stats(stats_graph, d.sender, d.receiver, x);
    design.add_row(d, response_graph.has_edge(d.sender, d.receiver), x, period);
  }
  return design;
}

DyadDesign build_design(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec,
                        std::optional<std::span<const Dyad>> free_dyads) {
  const ModelEvaluator eval(spec, attrs);
  if (free_dyads) return build_design(g, g, eval, *free_dyads);
  const auto dyads = all_dyads(g.node_count());
  return build_design(g, g, eval, dyads);
}

}  // namespace ergm
