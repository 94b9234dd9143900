#include "ergm/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <fmt/format.h>

#include "ergm/csv.hpp"
#include "ergm/errors.hpp"

namespace ergm {

namespace {

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::vector<InteractionEvent> load_events(const std::filesystem::path& path, const EventColumns& columns,
                                          int horizon) {
  const auto table = read_delimited(path);
  const std::string src = path.string();
  const auto cs = table.require_column(columns.sender, src);
  const auto cr = table.require_column(columns.receiver, src);
  const auto cd = table.require_column(columns.day, src);

  std::vector<InteractionEvent> events;
  events.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    if (row[cs].empty() || row[cr].empty()) {
      throw ValidationError(fmt::format("{}:{}: empty sender or receiver id", src, line));
    }
    const auto day = parse_int(row[cd]);
    if (!day) throw ValidationError(fmt::format("{}:{}: unparsable day '{}'", src, line, row[cd]));
    if (*day < 1 || *day > horizon) {
      throw ValidationError(fmt::format("{}:{}: day {} outside [1, {}]", src, line, *day, horizon));
    }
    events.push_back({row[cs], row[cr], *day, line});
  }
  return events;
}

std::optional<std::uint16_t> CategoricalAttribute::level_code(std::string_view level) const {
  const std::string wanted = to_lower(level);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (to_lower(levels[k]) == wanted) return static_cast<std::uint16_t>(k);
  }
  return std::nullopt;
}

LevelConfig default_level_config() {
  return {
      {"region", {"International", "Midwest", "Northeast", "South", "West"}, false},
      {"country", {"US", "Non-US"}, false},
      {"gender", {"Female", "Male"}, false},
      {"role", {"Teacher", "Administrator", "Technology/Media Staff", "Other"}, false},
      {"grade", {"Generalist", "Primary", "Secondary", "Post-Secondary"}, false},
      {"experience", {"<=10", "11-20", "20+"}, false},
      {"expert", {"Yes", "No"}, true},
      {"willing", {"Yes", "No"}, true},
      {"group", {"AC", "DL", "M", "N", "PD", "PS"}, false},
  };
}

NodeTable::NodeTable(std::vector<std::string> ids, std::vector<bool> facilitator)
    : ids_(std::move(ids)), facilitator_(std::move(facilitator)) {
  if (facilitator_.empty()) facilitator_.assign(ids_.size(), false);
  if (facilitator_.size() != ids_.size()) throw DimensionError("facilitator flags do not match id count");
}

NodeTable NodeTable::anonymous(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = std::to_string(k);
  return NodeTable(std::move(ids));
}

std::optional<NodeId> NodeTable::find(std::string_view id) const {
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (ids_[k] == id) return static_cast<NodeId>(k);
  }
  return std::nullopt;
}

const CategoricalAttribute* NodeTable::find_attribute(std::string_view name) const {
  const std::string wanted = to_lower(name);
  for (const auto& a : attrs_) {
    if (to_lower(a.name) == wanted) return &a;
  }
  return nullptr;
}

const CategoricalAttribute& NodeTable::attribute(std::string_view name) const {
  if (const auto* a = find_attribute(name)) return *a;
  throw UnknownAttributeError(fmt::format("unknown attribute '{}'", name));
}

void NodeTable::add_attribute(std::string name, std::vector<std::string> levels, std::vector<std::uint16_t> codes) {
  if (codes.size() != ids_.size()) {
    throw DimensionError(fmt::format("attribute '{}' has {} values for {} nodes", name, codes.size(), ids_.size()));
  }
  if (find_attribute(name)) throw ValidationError(fmt::format("duplicate attribute '{}'", name));
  for (std::size_t v = 0; v < codes.size(); ++v) {
    if (codes[v] >= levels.size()) {
      throw ValidationError(fmt::format("attribute '{}': node {} has level code {} outside {} levels", name,
                                        ids_[v], codes[v], levels.size()));
    }
  }
  attrs_.push_back({std::move(name), std::move(levels), std::move(codes)});
}

NodeTable NodeTable::subset(const NodeSubset& s) const {
  if (s.parent_size() != size()) {
    throw DimensionError(fmt::format("subset parent size {} does not match table of {} nodes", s.parent_size(), size()));
  }
  return select(s.members());
}

NodeTable NodeTable::select(std::span<const NodeId> rows) const {
  std::vector<std::string> ids;
  std::vector<bool> fac;
  ids.reserve(rows.size());
  for (NodeId m : rows) {
    if (m >= size()) throw OutOfRangeError(fmt::format("row {} is out of range for {} nodes", m, size()));
    ids.push_back(ids_[m]);
    fac.push_back(facilitator_[m]);
  }
  NodeTable out(std::move(ids), std::move(fac));
  for (const auto& a : attrs_) {
    std::vector<std::uint16_t> codes;
    codes.reserve(rows.size());
    for (NodeId m : rows) codes.push_back(a.codes[m]);
    out.attrs_.push_back({a.name, a.levels, std::move(codes)});
  }
  return out;
}

bool operator==(const NodeTable& a, const NodeTable& b) {
  if (a.ids_ != b.ids_ || a.facilitator_ != b.facilitator_ || a.attrs_.size() != b.attrs_.size()) return false;
  for (std::size_t k = 0; k < a.attrs_.size(); ++k) {
    const auto& x = a.attrs_[k];
    const auto& y = b.attrs_[k];
    if (x.name != y.name || x.levels != y.levels || x.codes != y.codes) return false;
  }
  return true;
}

std::optional<bool> parse_bool(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "yes" || v == "true" || v == "1" || v == "y") return true;
  if (v == "no" || v == "false" || v == "0" || v == "n") return false;
  return std::nullopt;
}

NodeTable load_attributes(const std::filesystem::path& path, const LevelConfig& levels,
                          const AttributeColumns& columns) {
  const auto table = read_delimited(path);
  const std::string src = path.string();
  const auto cid = table.require_column(columns.id, src);
  const auto cfac = table.column(columns.facilitator);

  std::vector<std::string> ids;
  std::vector<bool> fac;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row[cid].empty()) throw ValidationError(fmt::format("{}:{}: empty id", src, table.line_numbers[r]));
    if (!seen.insert(row[cid]).second) {
      throw ValidationError(fmt::format("{}:{}: duplicate id '{}'", src, table.line_numbers[r], row[cid]));
    }
    ids.push_back(row[cid]);
    bool f = false;
    if (cfac) {
      auto b = parse_bool(row[*cfac]);
      if (!b) {
        throw ValidationError(fmt::format("node '{}': invalid facilitator value '{}'", row[cid], row[*cfac]));
      }
      f = *b;
    }
    fac.push_back(f);
  }

  NodeTable out(ids, fac);
  for (const auto& spec : levels) {
    const auto col = table.require_column(spec.attribute, src);
    CategoricalAttribute probe{spec.attribute, spec.levels, {}};
    std::vector<std::uint16_t> codes;
    codes.reserve(ids.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      std::string value = table.rows[r][col];
      if (spec.boolean) {
        if (auto b = parse_bool(value)) value = *b ? "Yes" : "No";
      }
      if (value.empty()) {
        throw ValidationError(fmt::format("node '{}': missing value for '{}'", ids[r], spec.attribute));
      }
      auto code = probe.level_code(value);
      if (!code) {
        throw ValidationError(fmt::format("node '{}': value '{}' is not a declared level of '{}'", ids[r],
                                          table.rows[r][col], spec.attribute));
      }
      codes.push_back(*code);
    }
    out.add_attribute(spec.attribute, spec.levels, std::move(codes));
  }
  return out;
}

Assembly assemble_network(std::span<const InteractionEvent> events, const NodeTable& attrs,
                          bool exclude_facilitators) {
  std::map<std::string, NodeId, std::less<>> attr_index;
  for (NodeId v = 0; v < attrs.size(); ++v) attr_index.emplace(attrs.id(v), v);

  auto lookup = [&](const InteractionEvent& e, const std::string& id) {
    auto it = attr_index.find(id);
    if (it == attr_index.end()) {
      throw UnknownNodeError(e.line ? fmt::format("line {}: node '{}' is not in the attribute table", e.line, id)
                                    : fmt::format("node '{}' is not in the attribute table", id));
    }
    return it->second;
  };

  Assembly out;
  std::vector<std::pair<NodeId, NodeId>> kept;  // attribute-table indices
  std::vector<int> days;
  std::set<NodeId> used;
  for (const auto& e : events) {
    const NodeId s = lookup(e, e.sender_id);
    const NodeId r = lookup(e, e.receiver_id);
    if (exclude_facilitators && (attrs.facilitator(s) || attrs.facilitator(r))) {
      ++out.facilitator_events_dropped;
      continue;
    }
    if (s == r) {
      ++out.self_events_dropped;
      continue;
    }
    kept.emplace_back(s, r);
    days.push_back(e.day);
    used.insert(s);
    used.insert(r);
  }

  // Attribute-table order is not necessarily id order; sort members by id.
  std::vector<NodeId> members(used.begin(), used.end());
  std::sort(members.begin(), members.end(),
            [&](NodeId a, NodeId b) { return attrs.id(a) < attrs.id(b); });
  std::vector<NodeId> local(attrs.size(), 0);
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<NodeId>(k);

  NodeTable nodes = attrs.select(members);

  out.graph = DirectedGraph(members.size());
  out.events.reserve(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const NodeId s = local[kept[k].first];
    const NodeId r = local[kept[k].second];
    out.events.push_back({s, r, days[k]});
    if (!out.graph.add_edge(s, r)) ++out.duplicate_events_collapsed;
  }
  out.nodes = std::move(nodes);
  return out;
}

std::vector<DayRange> default_breakpoints() { return {{1, 18}, {19, 36}, {37, 55}, {56, 72}}; }

void validate_breakpoints(std::span<const DayRange> ranges, std::optional<int> horizon) {
  if (ranges.empty()) throw ConfigError("at least one period is required");
  int expected = 1;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    const auto& r = ranges[k];
    if (r.last < r.first) throw ConfigError(fmt::format("period {} has end {} before start {}", k + 1, r.last, r.first));
    if (r.first < expected) {
      throw ConfigError(fmt::format("period {} (days {}-{}) overlaps the previous period", k + 1, r.first, r.last));
    }
    if (r.first > expected) {
      throw ConfigError(fmt::format("gap before period {}: days {}-{} are not covered", k + 1, expected, r.first - 1));
    }
    expected = r.last + 1;
  }
  if (horizon && expected - 1 != *horizon) {
    throw ConfigError(fmt::format("periods end on day {} but the horizon is {}", expected - 1, *horizon));
  }
}

NetworkSeries slice_periods(std::span<const IndexedEvent> events, std::span<const DayRange> breakpoints,
                            const NodeSubset& node_set) {
  validate_breakpoints(breakpoints);
  NetworkSeries series;
  series.node_count = node_set.size();
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    series.periods.push_back({fmt::format("Q{}", k + 1), breakpoints[k], DirectedGraph(node_set.size())});
  }
  for (const auto& e : events) {
    if (e.sender >= node_set.parent_size() || e.receiver >= node_set.parent_size()) {
      throw OutOfRangeError(fmt::format("event ({}, {}) is outside the parent node set", e.sender, e.receiver));
    }
    const auto s = node_set.local_index(e.sender);
    const auto r = node_set.local_index(e.receiver);
    if (!s || !r || *s == *r) continue;
    for (auto& p : series.periods) {
      if (e.day >= p.days.first && e.day <= p.days.last) {
        p.graph.add_edge(*s, *r);
        break;
      }
    }
  }
  return series;
}

}  // namespace ergm
