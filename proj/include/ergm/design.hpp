#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"
#include "ergm/terms.hpp"

namespace ergm {

/// Dyad-level change-statistic matrix with the observed tie indicator as
/// response. Stored column-major: one contiguous vector per term.
class DyadDesign {
 public:
  DyadDesign() = default;
  explicit DyadDesign(std::vector<std::string> term_names);

  std::size_t n_rows() const noexcept { return dyads_.size(); }
  std::size_t n_terms() const noexcept { return names_.size(); }
  const std::vector<std::string>& term_names() const noexcept { return names_; }

  std::span<const double> column(std::size_t c) const noexcept { return columns_[c]; }
  double at(std::size_t row, std::size_t c) const noexcept { return columns_[c][row]; }
  const std::vector<Dyad>& dyads() const noexcept { return dyads_; }
  const std::vector<double>& response() const noexcept { return response_; }
  /// Period tag per row; all zero for a single cross-section.
  const std::vector<std::uint32_t>& periods() const noexcept { return periods_; }

  void reserve(std::size_t rows);
  /// Throws DimensionError if x.size() != n_terms().
  void add_row(Dyad d, bool tie, std::span<const double> x, std::uint32_t period = 0);
  /// Appends another design's rows. Term names must match.
  void append(const DyadDesign& other);
  /// Adds a column; values.size() must equal n_rows().
  void add_column(std::string name, std::vector<double> values);

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::vector<Dyad> dyads_;
  std::vector<double> response_;
  std::vector<std::uint32_t> periods_;
};

/// One row per free dyad (default: every ordered pair i != j, row-major)
/// holding its change statistics on `g` with everything else fixed.
/// Throws EmptyDesignError when the free set is empty.
DyadDesign build_design(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec,
                        std::optional<std::span<const Dyad>> free_dyads = std::nullopt);

/// Same, with change statistics evaluated on `stats_graph` while the response
/// comes from `response_graph`. Used by the formation model.
DyadDesign build_design(const DirectedGraph& stats_graph, const DirectedGraph& response_graph,
                        const ModelEvaluator& eval, std::span<const Dyad> free_dyads, std::uint32_t period = 0);

std::vector<Dyad> all_dyads(std::size_t n);

}  // namespace ergm
