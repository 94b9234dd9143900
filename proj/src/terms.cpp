#include "ergm/terms.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "ergm/csv.hpp"
#include "ergm/errors.hpp"

namespace ergm {

namespace {

std::string format_decay(double d) { return fmt::format("{}", d); }

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '/' || c == '+' ||
         c == '<' || c == '=' || c == '>' || c == ' ';
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : s_(text) {}

  TermSpec parse() {
    skip_ws();
    const std::size_t kind_pos = pos_;
    std::string kind;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      kind.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s_[pos_++]))));
    }
    if (kind.empty()) fail("expected a term name", kind_pos);
    skip_ws();
    std::vector<std::pair<std::string, std::size_t>> args;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      args = parse_args();
    }
    skip_ws();
    if (pos_ != s_.size()) fail(fmt::format("unexpected '{}'", s_[pos_]), pos_);

    auto no_args = [&](TermSpec t) {
      if (!args.empty()) fail(fmt::format("'{}' takes no arguments", kind), args.front().second);
      return t;
    };
    if (kind == "edges") return no_args(TermSpec::edges());
    if (kind == "mutual") return no_args(TermSpec::mutual());
    if (kind == "isolates") return no_args(TermSpec::isolates());
    if (kind == "odegpop" || kind == "outdegree_popularity") return no_args(TermSpec::odegpop());
    if (kind == "gwesp" || kind == "gwdsp") {
      double decay = 0.5;
      for (const auto& a : args)
        if (a.first.empty()) fail("expected a number", a.second);
      if (args.size() > 1) fail(fmt::format("'{}' takes one decay argument", kind), args[1].second);
      if (args.size() == 1) decay = parse_number(args[0]);
      if (decay < 0) fail("decay must be non-negative", args[0].second);
      return kind == "gwesp" ? TermSpec::gwesp(decay) : TermSpec::gwdsp(decay);
    }
    if (kind == "nodematch") {
      if (args.empty()) fail("nodematch needs an attribute name", pos_);
      if (args.size() > 2) fail("nodematch takes an attribute and an optional level", args[2].second);
      if (args[0].first.empty()) fail("expected an attribute name", args[0].second);
      if (args.size() == 1) return TermSpec::nodematch(to_lower(args[0].first));
      if (args[1].first.empty()) fail("expected a level", args[1].second);
      return TermSpec::nodematch(to_lower(args[0].first), args[1].first);
    }
    fail(fmt::format("unknown term '{}'", kind), kind_pos);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(fmt::format("term '{}': {} at position {}", s_, msg, at), at);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::vector<std::pair<std::string, std::size_t>> parse_args() {
    std::vector<std::pair<std::string, std::size_t>> args;
    while (true) {
      skip_ws();
      const std::size_t start = pos_;
      std::string arg;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') {
        if (!is_ident_char(s_[pos_])) fail(fmt::format("unexpected '{}'", s_[pos_]), pos_);
        arg.push_back(s_[pos_++]);
      }
      if (pos_ >= s_.size()) fail("missing ')'", pos_);
      args.emplace_back(trim(arg), start);
      if (s_[pos_] == ')') {
        ++pos_;
        return args;
      }
      ++pos_;  // ','
    }
  }

  double parse_number(const std::pair<std::string, std::size_t>& arg) const {
    if (arg.first.empty()) fail("expected a number", arg.second);
    double v = 0;
    const char* b = arg.first.data();
    const char* e = b + arg.first.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) fail(fmt::format("'{}' is not a number", arg.first), arg.second);
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool is_weighted(TermKind k) { return k == TermKind::gwesp || k == TermKind::gwdsp; }
bool is_nodematch(TermKind k) {
  return k == TermKind::nodematch_uniform || k == TermKind::nodematch_differential;
}

}  // namespace

std::string TermSpec::name() const {
  switch (kind) {
    case TermKind::edges: return "edges";
    case TermKind::mutual: return "mutual";
    case TermKind::gwesp: return fmt::format("gwesp({})", format_decay(decay.value_or(0.5)));
    case TermKind::gwdsp: return fmt::format("gwdsp({})", format_decay(decay.value_or(0.5)));
    case TermKind::isolates: return "isolates";
    case TermKind::outdegree_popularity: return "odegpop";
    case TermKind::nodematch_uniform: return fmt::format("nodematch({})", attribute);
    case TermKind::nodematch_differential: return fmt::format("nodematch({}, {})", attribute, level);
  }
  return "?";
}

void TermSpec::validate() const {
  if (is_weighted(kind) != decay.has_value()) {
    throw ConfigError(fmt::format("term '{}': decay is required for gwesp/gwdsp only", name()));
  }
  if (decay && !(*decay >= 0.0)) throw ConfigError(fmt::format("term '{}': decay must be non-negative", name()));
  if (is_nodematch(kind) == attribute.empty()) {
    throw ConfigError(fmt::format("term '{}': attribute is required for nodematch terms only", name()));
  }
  if ((kind == TermKind::nodematch_differential) == level.empty()) {
    throw ConfigError(fmt::format("term '{}': level is required for differential nodematch only", name()));
  }
}

TermSpec parse_term(std::string_view text) { return TermParser(text).parse(); }

ModelSpec::ModelSpec(std::vector<TermSpec> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ConfigError("a model needs at least one term");
  std::set<std::string> seen;
  for (const auto& t : terms_) {
    t.validate();
    if (!seen.insert(to_lower(t.name())).second) throw ConfigError(fmt::format("duplicate term '{}'", t.name()));
  }
}

ModelSpec ModelSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == ',' || c == '\n' || c == ';')) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  std::vector<std::string> nonempty;
  for (auto& p : parts) {
    if (!trim(p).empty()) nonempty.push_back(trim(p));
  }
  return from_strings(nonempty);
}

ModelSpec ModelSpec::from_strings(std::span<const std::string> terms) {
  std::vector<TermSpec> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(parse_term(t));
  return ModelSpec(std::move(out));
}

ModelSpec ModelSpec::standard_battery(const LevelConfig& levels, bool with_isolates) {
  auto levels_of = [&](std::string_view attr) -> std::vector<std::string> {
    for (const auto& l : levels) {
      if (l.attribute == attr) return l.levels;
    }
    throw ConfigError(fmt::format("level config has no attribute '{}'", attr));
  };
  std::vector<TermSpec> t{TermSpec::edges(), TermSpec::mutual(), TermSpec::gwesp(0.5), TermSpec::gwdsp(0.5)};
  if (with_isolates) t.push_back(TermSpec::isolates());
  t.push_back(TermSpec::odegpop());
  for (const char* a : {"role", "group", "grade", "gender", "country"}) t.push_back(TermSpec::nodematch(a));
  for (const char* a : {"region", "experience", "expert", "willing"}) {
    for (const auto& level : levels_of(a)) t.push_back(TermSpec::nodematch(a, level));
  }
  return ModelSpec(std::move(t));
}

std::vector<std::string> ModelSpec::names() const {
  std::vector<std::string> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.name());
  return out;
}

std::size_t two_path_count(const DirectedGraph& g, NodeId i, NodeId j) {
  const auto a = g.out_row(i);
  const auto b = g.in_row(j);
  std::size_t count = 0;
  for (std::size_t w = 0; w < a.size(); ++w) count += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return count;
}

ModelEvaluator::ModelEvaluator(const ModelSpec& spec, const NodeTable& attrs)
    : spec_(spec), node_count_(attrs.size()) {
  code_store_.reserve(spec.size());
  for (const auto& t : spec.terms()) {
    Compiled c{t.kind};
    if (t.decay) {
      c.decay = *t.decay;
      c.ratio = 1.0 - std::exp(-c.decay);
      c.scale = std::exp(c.decay);
    }
    if (is_nodematch(t.kind)) {
      const auto& a = attrs.attribute(t.attribute);
      code_store_.push_back(a.codes);
      c.codes = code_store_.back().data();
      if (t.kind == TermKind::nodematch_differential) {
        auto level = a.level_code(t.level);
        if (!level) {
          throw ValidationError(fmt::format("term '{}': '{}' is not a level of '{}'", t.name(), t.level, a.name));
        }
        c.level = *level;
      }
    }
    terms_.push_back(c);
  }
}

void ModelEvaluator::check(const DirectedGraph& g) const {
  if (g.node_count() != node_count_) {
    throw DimensionError(fmt::format("graph has {} nodes but the attribute table has {}", g.node_count(), node_count_));
  }
}

double ModelEvaluator::weight(const Compiled& t, std::size_t k) const {
  if (k == 0) return 0.0;
  return t.scale * (1.0 - std::pow(t.ratio, static_cast<double>(k)));
}

std::vector<double> ModelEvaluator::global_stats(const DirectedGraph& g) const {
  std::vector<double> out(terms_.size());
  global_stats(g, out);
  return out;
}

void ModelEvaluator::global_stats(const DirectedGraph& g, std::span<double> out) const {
  check(g);
  const auto n = static_cast<NodeId>(g.node_count());
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    const Compiled& t = terms_[r];
    double h = 0.0;
    switch (t.kind) {
      case TermKind::edges:
        h = static_cast<double>(g.edge_count());
        break;
      case TermKind::mutual:
        for (NodeId i = 0; i < n; ++i) {
          for_each_bit(g.out_row(i), [&](NodeId j) { h += (j > i && g.has_edge(j, i)) ? 1.0 : 0.0; });
        }
        break;
      case TermKind::gwesp:
        for (NodeId i = 0; i < n; ++i) {
          for_each_bit(g.out_row(i), [&](NodeId j) { h += weight(t, two_path_count(g, i, j)); });
        }
        break;
      case TermKind::gwdsp:
        for (NodeId i = 0; i < n; ++i) {
          for (NodeId j = 0; j < n; ++j) {
            if (i != j) h += weight(t, two_path_count(g, i, j));
          }
        }
        break;
      case TermKind::isolates:
        for (NodeId i = 0; i < n; ++i) h += (g.indegree(i) + g.outdegree(i) == 0) ? 1.0 : 0.0;
        break;
      case TermKind::outdegree_popularity:
        for (NodeId j = 0; j < n; ++j) h += static_cast<double>(g.indegree(j) * g.outdegree(j));
        break;
      case TermKind::nodematch_uniform:
        for (NodeId i = 0; i < n; ++i) {
          for_each_bit(g.out_row(i), [&](NodeId j) { h += t.codes[i] == t.codes[j] ? 1.0 : 0.0; });
        }
        break;
      case TermKind::nodematch_differential:
        for (NodeId i = 0; i < n; ++i) {
          if (t.codes[i] != t.level) continue;
          for_each_bit(g.out_row(i), [&](NodeId j) { h += t.codes[j] == t.level ? 1.0 : 0.0; });
        }
        break;
    }
    out[r] = h;
  }
}

void ModelEvaluator::change_stats(const DirectedGraph& g, NodeId i, NodeId j, std::span<double> out) const {
  const bool present = g.has_edge(i, j);
  const std::size_t own = present ? 1 : 0;
  const auto out_i = g.out_row(i);
  const auto out_j = g.out_row(j);
  const auto in_i = g.in_row(i);
  const auto in_j = g.in_row(j);

  for (std::size_t r = 0; r < terms_.size(); ++r) {
    const Compiled& t = terms_[r];
    double d = 0.0;
    switch (t.kind) {
      case TermKind::edges:
        d = 1.0;
        break;
      case TermKind::mutual:
        d = g.has_edge(j, i) ? 1.0 : 0.0;
        break;
      case TermKind::gwesp: {
        // The new edge itself, plus one extra partner for existing edges
        // i->k closed through j and k->j closed through i. Raising a count
        // from s to s+1 adds ratio^s to the weighted sum.
        d = weight(t, two_path_count(g, i, j));
        for (std::size_t w = 0; w < out_i.size(); ++w) {
          std::uint64_t bits = out_j[w] & out_i[w];
          while (bits) {
            const auto k = static_cast<NodeId>(w * 64 + __builtin_ctzll(bits));
            bits &= bits - 1;
            d += std::pow(t.ratio, static_cast<double>(two_path_count(g, i, k) - own));
          }
          bits = in_i[w] & in_j[w];
          while (bits) {
            const auto k = static_cast<NodeId>(w * 64 + __builtin_ctzll(bits));
            bits &= bits - 1;
            d += std::pow(t.ratio, static_cast<double>(two_path_count(g, k, j) - own));
          }
        }
        break;
      }
      case TermKind::gwdsp: {
        for_each_bit(out_j, [&](NodeId k) {
          if (k != i) d += std::pow(t.ratio, static_cast<double>(two_path_count(g, i, k) - own));
        });
        for_each_bit(in_i, [&](NodeId k) {
          if (k != j) d += std::pow(t.ratio, static_cast<double>(two_path_count(g, k, j) - own));
        });
        break;
      }
      case TermKind::isolates: {
        const std::size_t deg_i = g.indegree(i) + g.outdegree(i) - own;
        const std::size_t deg_j = g.indegree(j) + g.outdegree(j) - own;
        d = -static_cast<double>(deg_i == 0) - static_cast<double>(deg_j == 0);
        break;
      }
      case TermKind::outdegree_popularity:
        d = static_cast<double>(g.outdegree(j) + g.indegree(i));
        break;
      case TermKind::nodematch_uniform:
        d = t.codes[i] == t.codes[j] ? 1.0 : 0.0;
        break;
      case TermKind::nodematch_differential:
        d = (t.codes[i] == t.level && t.codes[j] == t.level) ? 1.0 : 0.0;
        break;
    }
    out[r] = d;
  }
}

std::vector<double> ModelEvaluator::change_stats_by_toggle(const DirectedGraph& g, NodeId i, NodeId j) const {
  DirectedGraph with = g, without = g;
  with.add_edge(i, j);
  without.remove_edge(i, j);
  auto a = global_stats(with);
  const auto b = global_stats(without);
  for (std::size_t r = 0; r < a.size(); ++r) a[r] -= b[r];
  return a;
}

std::vector<double> global_stats(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec) {
  return ModelEvaluator(spec, attrs).global_stats(g);
}

std::vector<double> change_stats(const DirectedGraph& g, const NodeTable& attrs, Dyad dyad, const ModelSpec& spec) {
  if (dyad.sender == dyad.receiver) {
    throw InvalidDyadError(fmt::format("dyad ({}, {}) is a self-pair", dyad.sender, dyad.receiver));
  }
  if (dyad.sender >= g.node_count() || dyad.receiver >= g.node_count()) {
    throw OutOfRangeError(fmt::format("dyad ({}, {}) is out of range", dyad.sender, dyad.receiver));
  }
  ModelEvaluator eval(spec, attrs);
  if (g.node_count() != eval.node_count()) {
    throw DimensionError("graph and attribute table sizes differ");
  }
  std::vector<double> out(eval.size());
  eval.change_stats(g, dyad.sender, dyad.receiver, out);
  return out;
}

}  // namespace ergm
