#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ergm/config.hpp"
#include "ergm/report.hpp"

namespace ergm {

/// Inputs loaded, facilitators excluded, subsample selected and sliced.
struct PreparedData {
  Assembly assembly;
  NodeSubset subset;
  DirectedGraph aggregate;  // induced on subset
  NodeTable nodes;          // aligned with aggregate
  NetworkSeries series;     // periods on the same node set
  std::vector<std::string> warnings;
};

/// Throws Error("no events") when the edges file has no usable events.
PreparedData prepare_data(const RunConfig& cfg);

/// Model terms from cfg.terms, or the standard battery (with isolates for the
/// temporal models).
ModelSpec model_for(const RunConfig& cfg, bool temporal);

struct CommandOutput {
  std::vector<std::pair<std::string, Table>> tables;         // file stem -> table
  std::vector<std::pair<std::string, std::string>> files;    // file name -> content
  std::vector<std::string> warnings;
};

CommandOutput run_describe(const RunConfig& cfg);
CommandOutput run_fit(const RunConfig& cfg);

enum class TemporalMode { pooled, formation };
CommandOutput run_temporal(const RunConfig& cfg, TemporalMode mode);

/// Needs cfg.theta and either cfg.attrs or cfg.sim_nodes.
CommandOutput run_simulate(const RunConfig& cfg);

/// Writes the selected network (aggregate or a period label) to cfg.output,
/// or to out_dir/network.<ext>.
CommandOutput run_export(const RunConfig& cfg);

/// Prints every table to `out` in cfg.format and, when cfg.out_dir is set,
/// writes <stem>.txt and <stem>.csv (plus <stem>.json for json format) and
/// the extra files.
void emit(const CommandOutput& result, const RunConfig& cfg, std::ostream& out);

}  // namespace ergm
