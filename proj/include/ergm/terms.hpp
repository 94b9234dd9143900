#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"

namespace ergm {

enum class TermKind {
  edges,
  mutual,
  gwesp,
  gwdsp,
  isolates,
  outdegree_popularity,
  nodematch_uniform,
  nodematch_differential,
};

/// One model statistic. `decay` applies to gwesp/gwdsp, `attribute` to the
/// nodematch kinds and `level` to nodematch_differential only.
struct TermSpec {
  TermKind kind = TermKind::edges;
  std::optional<double> decay;
  std::string attribute;
  std::string level;

  static TermSpec edges() { return {TermKind::edges, {}, {}, {}}; }
  static TermSpec mutual() { return {TermKind::mutual, {}, {}, {}}; }
  static TermSpec gwesp(double decay = 0.5) { return {TermKind::gwesp, decay, {}, {}}; }
  static TermSpec gwdsp(double decay = 0.5) { return {TermKind::gwdsp, decay, {}, {}}; }
  static TermSpec isolates() { return {TermKind::isolates, {}, {}, {}}; }
  static TermSpec odegpop() { return {TermKind::outdegree_popularity, {}, {}, {}}; }
  static TermSpec nodematch(std::string attr) { return {TermKind::nodematch_uniform, {}, std::move(attr), {}}; }
  static TermSpec nodematch(std::string attr, std::string level) {
    return {TermKind::nodematch_differential, {}, std::move(attr), std::move(level)};
  }

  /// Canonical grammar form, e.g. "gwesp(0.5)" or "nodematch(region, West)".
  std::string name() const;
  /// Throws ConfigError if the optional fields do not match the kind.
  void validate() const;

  friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

/// Parses one term. Kinds and attribute names are case-insensitive.
/// Throws ParseError carrying the character position of the problem.
TermSpec parse_term(std::string_view text);

class ModelSpec {
 public:
  ModelSpec() = default;
  /// Throws ConfigError on an empty list, an invalid term or a duplicate.
  explicit ModelSpec(std::vector<TermSpec> terms);

  /// Terms separated by '+' (or by top-level commas / newlines).
  static ModelSpec parse(std::string_view text);
  static ModelSpec from_strings(std::span<const std::string> terms);

  /// Edges, mutual, gwesp(0.5), gwdsp(0.5), odegpop and the 17 homophily
  /// terms (role, group, grade, gender, country uniform; region, experience,
  /// expert and willing by level). `with_isolates` inserts isolates after
  /// gwdsp, giving the 23-term temporal battery.
  static ModelSpec standard_battery(const LevelConfig& levels = default_level_config(), bool with_isolates = false);

  const std::vector<TermSpec>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::vector<std::string> names() const;

 private:
  std::vector<TermSpec> terms_;
};

/// A ModelSpec resolved against a NodeTable: attribute lookups and the
/// geometric weights are done once so per-dyad evaluation is cheap.
class ModelEvaluator {
 public:
  /// Throws UnknownAttributeError / ValidationError for unresolved
  /// attributes or levels.
  ModelEvaluator(const ModelSpec& spec, const NodeTable& attrs);

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t node_count() const noexcept { return node_count_; }
  const ModelSpec& spec() const noexcept { return spec_; }

  /// h(g), one entry per term.
  void global_stats(const DirectedGraph& g, std::span<double> out) const;
  std::vector<double> global_stats(const DirectedGraph& g) const;

  /// h(g with i->j) - h(g without i->j), whatever the current state of i->j.
  /// Closed forms; the caller guarantees i != j and matching node counts.
  void change_stats(const DirectedGraph& g, NodeId i, NodeId j, std::span<double> out) const;

  /// Reference path: toggles i->j on a copy and recomputes global_stats.
  std::vector<double> change_stats_by_toggle(const DirectedGraph& g, NodeId i, NodeId j) const;

 private:
  struct Compiled {
    TermKind kind;
    double decay = 0.0;
    double ratio = 0.0;  // 1 - exp(-decay)
    double scale = 1.0;  // exp(decay)
    const std::uint16_t* codes = nullptr;
    std::uint16_t level = 0;
  };
  void check(const DirectedGraph& g) const;
  double weight(const Compiled& t, std::size_t k) const;

  ModelSpec spec_;
  std::size_t node_count_ = 0;
  std::vector<std::vector<std::uint16_t>> code_store_;
  std::vector<Compiled> terms_;
};

/// Convenience wrappers that compile the spec per call.
std::vector<double> global_stats(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec);
std::vector<double> change_stats(const DirectedGraph& g, const NodeTable& attrs, Dyad dyad, const ModelSpec& spec);

/// Number of nodes m with i->m and m->j.
std::size_t two_path_count(const DirectedGraph& g, NodeId i, NodeId j);

}  // namespace ergm
