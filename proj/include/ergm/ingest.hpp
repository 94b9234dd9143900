#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

struct InteractionEvent {
  std::string sender_id;
  std::string receiver_id;
  int day = 0;
  std::size_t line = 0;  // source line, 0 when constructed in memory
};

struct EventColumns {
  std::string sender = "sender_id";
  std::string receiver = "receiver_id";
  std::string day = "day";
};

/// Parses an edges file. Rows with a missing/unparsable day or a day outside
/// [1, horizon] are rejected with their line number (ValidationError).
std::vector<InteractionEvent> load_events(const std::filesystem::path& path,
                                          const EventColumns& columns = {}, int horizon = 72);

/// Categorical node attribute: declared levels plus one code per node.
struct CategoricalAttribute {
  std::string name;
  std::vector<std::string> levels;
  std::vector<std::uint16_t> codes;

  const std::string& value(NodeId v) const { return levels[codes[v]]; }
  /// Case-insensitive level lookup.
  std::optional<std::uint16_t> level_code(std::string_view level) const;
};

/// Declared level sets, in column order. Boolean attributes use {Yes, No}.
struct LevelSpec {
  std::string attribute;
  std::vector<std::string> levels;
  bool boolean = false;
};
using LevelConfig = std::vector<LevelSpec>;

/// Region, country, gender, role, grade, experience, expert, willing, group
/// with the participant-sample categories.
LevelConfig default_level_config();

class NodeTable {
 public:
  NodeTable() = default;
  /// Table with ids only; attributes are added with add_attribute.
  explicit NodeTable(std::vector<std::string> ids, std::vector<bool> facilitator = {});

  /// Ids "0", "1", ... with no attributes.
  static NodeTable anonymous(std::size_t n);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(NodeId v) const { return ids_[v]; }
  bool facilitator(NodeId v) const { return facilitator_[v]; }
  std::optional<NodeId> find(std::string_view id) const;

  const std::vector<CategoricalAttribute>& attributes() const noexcept { return attrs_; }
  /// Case-insensitive; throws UnknownAttributeError.
  const CategoricalAttribute& attribute(std::string_view name) const;
  const CategoricalAttribute* find_attribute(std::string_view name) const;

  /// Throws DimensionError if codes.size() != size(), ValidationError on a
  /// code outside the level set or a duplicate name.
  void add_attribute(std::string name, std::vector<std::string> levels, std::vector<std::uint16_t> codes);

  /// Rows for `s.members()`, in order. Throws DimensionError on size mismatch.
  NodeTable subset(const NodeSubset& s) const;
  /// Rows in the given order (indices may repeat or be permuted).
  NodeTable select(std::span<const NodeId> rows) const;

  friend bool operator==(const NodeTable& a, const NodeTable& b);

 private:
  std::vector<std::string> ids_;
  std::vector<bool> facilitator_;
  std::vector<CategoricalAttribute> attrs_;
};

struct AttributeColumns {
  std::string id = "id";
  std::string facilitator = "facilitator";
};

/// Parses an attributes file and validates every categorical value against
/// `levels`. Unknown values and duplicate ids raise ValidationError.
NodeTable load_attributes(const std::filesystem::path& path, const LevelConfig& levels = default_level_config(),
                          const AttributeColumns& columns = {});

/// Accepts Yes/No, True/False, 1/0 (case-insensitive).
std::optional<bool> parse_bool(std::string_view s);

struct IndexedEvent {
  NodeId sender = 0;
  NodeId receiver = 0;
  int day = 0;
};

struct Assembly {
  DirectedGraph graph;
  NodeTable nodes;
  std::vector<IndexedEvent> events;  // in graph indexing, self-events removed
  std::size_t facilitator_events_dropped = 0;
  std::size_t self_events_dropped = 0;
  std::size_t duplicate_events_collapsed = 0;
};

/// Builds the aggregate network. Nodes are the union of remaining senders and
/// receivers, indexed in lexicographic id order. Throws UnknownNodeError for
/// an event id missing from `attrs`.
Assembly assemble_network(std::span<const InteractionEvent> events, const NodeTable& attrs,
                          bool exclude_facilitators);

struct DayRange {
  int first = 1;
  int last = 1;
  friend bool operator==(const DayRange&, const DayRange&) = default;
};

/// Q1 (1-18), Q2 (19-36), Q3 (37-55), Q4 (56-72).
std::vector<DayRange> default_breakpoints();

/// Ranges must be non-empty, ordered and contiguous from day 1; when
/// `horizon` is given the last range must end on it. Throws ConfigError.
void validate_breakpoints(std::span<const DayRange> ranges, std::optional<int> horizon = std::nullopt);

struct Period {
  std::string label;
  DayRange days;
  DirectedGraph graph;
};

struct NetworkSeries {
  std::size_t node_count = 0;
  std::vector<Period> periods;

  std::size_t size() const noexcept { return periods.size(); }
  const DirectedGraph& operator[](std::size_t t) const { return periods[t].graph; }
};

/// One graph per day range holding the events that fall in it and whose
/// endpoints are in `node_set`. Events index the parent of `node_set`.
NetworkSeries slice_periods(std::span<const IndexedEvent> events, std::span<const DayRange> breakpoints,
                            const NodeSubset& node_set);

}  // namespace ergm
