#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergm/estimator.hpp"
#include "ergm/export.hpp"
#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"
#include "ergm/report.hpp"
#include "ergm/temporal.hpp"

namespace ergm {

struct Subsample {
  enum class Kind { lc, active, none };
  Kind kind = Kind::lc;
  std::size_t k = 3;

  std::string label() const;
};

/// "lc", "active", "active:K" or "none". Throws ConfigError.
Subsample parse_subsample(std::string_view s);

/// Everything a CLI run needs. Loaded from a JSON file, then overridden by
/// command-line flags.
struct RunConfig {
  std::filesystem::path edges;
  std::filesystem::path attrs;
  EventColumns event_columns;
  AttributeColumns attribute_columns;
  LevelConfig levels = default_level_config();
  int horizon = 72;
  std::vector<DayRange> breakpoints = default_breakpoints();
  Subsample subsample;
  Connectivity connectivity = Connectivity::weak;
  bool exclude_facilitators = true;

  std::optional<std::string> terms;  // term grammar; default is the standard battery
  FitOptions fit;
  int replications = 100;
  std::uint64_t seed = 12345;
  BootstrapMode bootstrap_mode = BootstrapMode::temporal;
  bool lagged_edges = false;
  BicDyads bic_dyads = BicDyads::free;

  std::filesystem::path out_dir;
  OutputFormat format = OutputFormat::text;

  // simulate
  std::size_t sim_nodes = 0;
  std::vector<double> theta;
  std::size_t samples = 1;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thin;

  // export
  GraphFormat graph_format = GraphFormat::graphml;
  std::string period = "aggregate";
  std::filesystem::path output;
};

/// Throws ConfigError with the offending key for malformed documents.
RunConfig parse_config(std::string_view json_text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Breakpoints cover [1, horizon]; activity threshold and counts are sane.
void validate_config(const RunConfig& cfg);

OutputFormat parse_output_format(std::string_view s);
BootstrapMode parse_bootstrap_mode(std::string_view s);
Connectivity parse_connectivity(std::string_view s);
/// "1-18,19-36,..." Throws ConfigError.
std::vector<DayRange> parse_breakpoints(std::string_view s);
/// Comma- or space-separated reals. Throws ConfigError.
std::vector<double> parse_theta(std::string_view s);

}  // namespace ergm
