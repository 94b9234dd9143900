#include "ergm/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ergm/csv.hpp"
#include "ergm/errors.hpp"
#include "json.hpp"

namespace ergm {

std::string Subsample::label() const {
  switch (kind) {
    case Kind::lc: return "lc";
    case Kind::active: return fmt::format("active:{}", k);
    case Kind::none: return "none";
  }
  return {};
}

Subsample parse_subsample(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "lc") return {Subsample::Kind::lc, 3};
  if (v == "none" || v == "all") return {Subsample::Kind::none, 0};
  if (v == "active") return {Subsample::Kind::active, 3};
  if (v.rfind("active:", 0) == 0) {
    const std::string num = v.substr(7);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec != std::errc{} || ptr != num.data() + num.size()) {
      throw ConfigError(fmt::format("subsample '{}': activity threshold must be a non-negative integer", s));
    }
    return {Subsample::Kind::active, k};
  }
  throw ConfigError(fmt::format("unknown subsample '{}' (expected lc, active:K or none)", s));
}

OutputFormat parse_output_format(std::string_view s) {
  const std::string v = to_lower(s);
  if (v == "text") return OutputFormat::text;
  if (v == "csv") return OutputFormat::csv;
  if (v == "json") return OutputFormat::json;
  throw ConfigError(fmt::format("unknown output format '{}' (expected text, csv or json)", s));
}

BootstrapMode parse_bootstrap_mode(std::string_view s) {
  const std::string v = to_lower(s);
  if (v == "temporal") return BootstrapMode::temporal;
  if (v == "sender" || v == "sender_block" || v == "sender-block") return BootstrapMode::sender_block;
  throw ConfigError(fmt::format("unknown bootstrap mode '{}' (expected temporal or sender)", s));
}

Connectivity parse_connectivity(std::string_view s) {
  const std::string v = to_lower(s);
  if (v == "weak") return Connectivity::weak;
  if (v == "strong") return Connectivity::strong;
  throw ConfigError(fmt::format("unknown connectivity '{}' (expected weak or strong)", s));
}

namespace {

int to_int(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", what, s));
  }
  return v;
}

}  // namespace

std::vector<DayRange> parse_breakpoints(std::string_view s) {
  std::vector<DayRange> out;
  std::stringstream ss{std::string(s)};
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) throw ConfigError(fmt::format("breakpoint '{}' is not of the form A-B", part));
    out.push_back({to_int(part.substr(0, dash), "breakpoints"), to_int(part.substr(dash + 1), "breakpoints")});
  }
  return out;
}

std::vector<double> parse_theta(std::string_view s) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    const std::string t = trim(cur);
    cur.clear();
    if (t.empty()) return;
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) throw ConfigError(fmt::format("theta: '{}' is not a number", t));
    out.push_back(v);
  };
  for (char c : s) {
    if (c == ',' || c == ' ') flush();
    else cur.push_back(c);
  }
  flush();
  return out;
}

RunConfig parse_config(std::string_view json_text, RunConfig cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  std::string key;
  try {
    for (const auto& [k, v] : j.items()) {
      key = k;
      if (k == "edges") cfg.edges = v.get<std::string>();
      else if (k == "attrs") cfg.attrs = v.get<std::string>();
      else if (k == "horizon") cfg.horizon = v.get<int>();
      else if (k == "breakpoints") {
        cfg.breakpoints.clear();
        for (const auto& r : v) cfg.breakpoints.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
      } else if (k == "subsample") cfg.subsample = parse_subsample(v.get<std::string>());
      else if (k == "activity_k") cfg.subsample.k = v.get<std::size_t>();
      else if (k == "connectivity") cfg.connectivity = parse_connectivity(v.get<std::string>());
      else if (k == "exclude_facilitators") cfg.exclude_facilitators = v.get<bool>();
      else if (k == "terms") {
        if (v.is_array()) {
          std::string joined;
          for (const auto& t : v) joined += (joined.empty() ? "" : " + ") + t.get<std::string>();
          cfg.terms = joined;
        } else {
          cfg.terms = v.get<std::string>();
        }
      } else if (k == "tolerance") cfg.fit.tolerance = v.get<double>();
      else if (k == "max_iterations") cfg.fit.max_iterations = v.get<int>();
      else if (k == "replications") cfg.replications = v.get<int>();
      else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (k == "bootstrap") cfg.bootstrap_mode = parse_bootstrap_mode(v.get<std::string>());
      else if (k == "lagged_edges") cfg.lagged_edges = v.get<bool>();
      else if (k == "bic_dyads") {
        const auto s = v.get<std::string>();
        if (s == "free") cfg.bic_dyads = BicDyads::free;
        else if (s == "all") cfg.bic_dyads = BicDyads::all;
        else throw ConfigError(fmt::format("config: bic_dyads must be 'free' or 'all', got '{}'", s));
      } else if (k == "out_dir") cfg.out_dir = v.get<std::string>();
      else if (k == "format") cfg.format = parse_output_format(v.get<std::string>());
      else if (k == "columns") {
        cfg.event_columns.sender = v.value("sender", cfg.event_columns.sender);
        cfg.event_columns.receiver = v.value("receiver", cfg.event_columns.receiver);
        cfg.event_columns.day = v.value("day", cfg.event_columns.day);
        cfg.attribute_columns.id = v.value("id", cfg.attribute_columns.id);
        cfg.attribute_columns.facilitator = v.value("facilitator", cfg.attribute_columns.facilitator);
      } else if (k == "levels") {
        LevelConfig levels;
        for (const auto& [name, lv] : v.items()) {
          const auto values = lv.get<std::vector<std::string>>();
          const bool boolean = values.size() == 2 && to_lower(values[0]) == "yes" && to_lower(values[1]) == "no";
          levels.push_back({name, values, boolean});
        }
        cfg.levels = std::move(levels);
      } else if (k == "nodes") cfg.sim_nodes = v.get<std::size_t>();
      else if (k == "theta") cfg.theta = v.get<std::vector<double>>();
      else if (k == "samples") cfg.samples = v.get<std::size_t>();
      else if (k == "burn_in") cfg.burn_in = v.get<std::size_t>();
      else if (k == "thin") cfg.thin = v.get<std::size_t>();
      else if (k == "graph_format") cfg.graph_format = parse_graph_format(v.get<std::string>());
      else if (k == "period") cfg.period = v.get<std::string>();
      else if (k == "output") cfg.output = v.get<std::string>();
      else throw ConfigError(fmt::format("config: unknown key '{}'", k));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void validate_config(const RunConfig& cfg) {
  if (cfg.horizon < 1) throw ConfigError("horizon must be at least 1");
  validate_breakpoints(cfg.breakpoints, cfg.horizon);
  if (cfg.fit.tolerance <= 0) throw ConfigError("tolerance must be positive");
  if (cfg.fit.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

}  // namespace ergm
