#include "ergm/app.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "ergm/csv.hpp"
#include "ergm/errors.hpp"
#include "ergm/export.hpp"
#include "ergm/sampler.hpp"

namespace ergm {

PreparedData prepare_data(const RunConfig& cfg) {
  validate_config(cfg);
  if (cfg.edges.empty()) throw ConfigError("no edges file given (--edges)");
  if (cfg.attrs.empty()) throw ConfigError("no attributes file given (--attrs)");
  const auto events = load_events(cfg.edges, cfg.event_columns, cfg.horizon);
  if (events.empty()) throw Error(fmt::format("no events in '{}'", cfg.edges.string()));
  const NodeTable attrs = load_attributes(cfg.attrs, cfg.levels, cfg.attribute_columns);

  PreparedData d;
  d.assembly = assemble_network(events, attrs, cfg.exclude_facilitators);
  const auto& as = d.assembly;
  if (as.graph.node_count() == 0) throw Error("no events remain after excluding facilitators and self-events");
  if (as.self_events_dropped > 0) d.warnings.push_back(fmt::format("{} self-events dropped", as.self_events_dropped));
  if (as.facilitator_events_dropped > 0) {
    d.warnings.push_back(fmt::format("{} facilitator events excluded", as.facilitator_events_dropped));
  }

  switch (cfg.subsample.kind) {
    case Subsample::Kind::lc: d.subset = largest_component(as.graph, cfg.connectivity); break;
    case Subsample::Kind::active: d.subset = activity_subset(as.graph, cfg.subsample.k); break;
    case Subsample::Kind::none: d.subset = NodeSubset::all(as.graph.node_count()); break;
  }
  d.aggregate = induced_subgraph(as.graph, d.subset);
  d.nodes = as.nodes.subset(d.subset);
  d.series = slice_periods(as.events, cfg.breakpoints, d.subset);
  return d;
}

ModelSpec model_for(const RunConfig& cfg, bool temporal) {
  if (cfg.terms) return ModelSpec::parse(*cfg.terms);
  return ModelSpec::standard_battery(cfg.levels, temporal);
}

CommandOutput run_describe(const RunConfig& cfg) {
  const PreparedData d = prepare_data(cfg);
  std::vector<DescriptiveRow> rows;
  rows.push_back(describe(d.aggregate, "aggregate"));
  for (const auto& p : d.series.periods) rows.push_back(describe(p.graph, p.label));
  CommandOutput out;
  out.tables.emplace_back("describe", descriptive_table(rows, fmt::format("Network descriptives ({})", cfg.subsample.label())));
  out.warnings = d.warnings;
  return out;
}

CommandOutput run_fit(const RunConfig& cfg) {
  const PreparedData d = prepare_data(cfg);
  const ModelSpec spec = model_for(cfg, false);
  const FitResult fit = fit_mple(d.aggregate, d.nodes, spec, cfg.fit);
  CommandOutput out;
  out.tables.emplace_back("fit", fit_table(fit, fmt::format("ERGM by MPLE ({} network, {} nodes)",
                                                            cfg.subsample.label(), d.aggregate.node_count())));
  out.warnings = d.warnings;
  out.warnings.insert(out.warnings.end(), fit.warnings.begin(), fit.warnings.end());
  return out;
}

namespace {

std::string replicate_dump(const BtergmFit& fit) {
  std::string s = "replicate";
  for (const auto& n : fit.fit.term_names) s += "," + csv_escape(n);
  s += "\n";
  for (std::size_t k = 0; k < fit.bootstrap.replicate_coefficients.size(); ++k) {
    s += std::to_string(k);
    for (double v : fit.bootstrap.replicate_coefficients[k]) s += fmt::format(",{:.17g}", v);
    s += "\n";
  }
  return s;
}

}  // namespace

CommandOutput run_temporal(const RunConfig& cfg, TemporalMode mode) {
  const PreparedData d = prepare_data(cfg);
  const ModelSpec spec = model_for(cfg, true);
  CommandOutput out;
  out.warnings = d.warnings;
  if (mode == TemporalMode::pooled) {
    BootstrapOptions opts;
    opts.replications = cfg.replications;
    opts.seed = cfg.seed;
    opts.mode = cfg.bootstrap_mode;
    opts.pooled.lagged_edges = cfg.lagged_edges;
    opts.fit = cfg.fit;
    const BtergmFit fit = fit_btergm(d.series, d.nodes, spec, opts);
    out.tables.emplace_back("tergm", btergm_table(fit, fmt::format("Temporal ERGM, pooled over {} transitions ({} network)",
                                                                   d.series.size() - 1, cfg.subsample.label())));
    out.files.emplace_back("tergm_replicates.csv", replicate_dump(fit));
    out.warnings.insert(out.warnings.end(), fit.fit.warnings.begin(), fit.fit.warnings.end());
  } else {
    if (d.series.size() < 2) throw InsufficientPeriodsError("formation models need at least 2 periods");
    FormationOptions opts;
    opts.fit = cfg.fit;
    opts.bic_dyads = cfg.bic_dyads;
    for (std::size_t t = 1; t < d.series.size(); ++t) {
      const auto& prev = d.series.periods[t - 1];
      const auto& curr = d.series.periods[t];
      const FitResult fit = fit_formation(prev.graph, curr.graph, d.nodes, spec, opts);
      out.tables.emplace_back(fmt::format("formation_{}_{}", prev.label, curr.label),
                              formation_table(fit, fmt::format("Formation model {} to {} ({} network)", prev.label,
                                                               curr.label, cfg.subsample.label())));
      for (const auto& w : fit.warnings) out.warnings.push_back(fmt::format("{}->{}: {}", prev.label, curr.label, w));
    }
  }
  return out;
}

CommandOutput run_simulate(const RunConfig& cfg) {
  NodeTable nodes;
  if (!cfg.attrs.empty()) {
    nodes = load_attributes(cfg.attrs, cfg.levels, cfg.attribute_columns);
  } else if (cfg.sim_nodes >= 2) {
    nodes = NodeTable::anonymous(cfg.sim_nodes);
  } else {
    throw ConfigError("simulate needs --attrs or --nodes N (N >= 2)");
  }
  if (!cfg.terms) throw ConfigError("simulate needs --terms");
  const ModelSpec spec = ModelSpec::parse(*cfg.terms);
  SamplerControl control;
  control.burn_in = cfg.burn_in;
  control.thin = cfg.thin;
  control.sample_count = cfg.samples;
  control.seed = cfg.seed;
  const SampleSet set = sample_ergm(nodes, spec, cfg.theta, control);

  CommandOutput out;
  Table trace;
  trace.title = fmt::format("Sampled statistics ({} samples, {} nodes, seed {})", set.graphs.size(), nodes.size(), cfg.seed);
  trace.columns = {"sample", "edges_count"};
  for (const auto& n : set.term_names) trace.columns.push_back(n);
  for (std::size_t k = 0; k < set.graphs.size(); ++k) {
    std::vector<std::string> row{std::to_string(k), std::to_string(set.graphs[k].edge_count())};
    for (double v : set.statistics[k]) row.push_back(format_fixed(v, 6));
    trace.rows.push_back(std::move(row));

    std::string edges = "sender_id,receiver_id,day\n";
    for (const Edge& e : set.graphs[k].edges()) {
      edges += fmt::format("{},{},1\n", csv_escape(nodes.id(e.sender)), csv_escape(nodes.id(e.receiver)));
    }
    out.files.emplace_back(fmt::format("sample_{:04d}.csv", k), std::move(edges));
  }
  trace.footer = {{"Proposals", std::to_string(set.proposals)},
                  {"Accepted", std::to_string(set.accepted)},
                  {"Mean density", format_fixed(set.mean_density, 6)}};
  out.tables.emplace_back("simulate_trace", std::move(trace));
  out.warnings = set.warnings;
  return out;
}

CommandOutput run_export(const RunConfig& cfg) {
  const PreparedData d = prepare_data(cfg);
  const DirectedGraph* g = nullptr;
  if (cfg.period == "aggregate") {
    g = &d.aggregate;
  } else {
    for (const auto& p : d.series.periods) {
      if (p.label == cfg.period) g = &p.graph;
    }
  }
  if (!g) throw ConfigError(fmt::format("unknown period '{}' (use aggregate or Q1..Q{})", cfg.period, d.series.size()));
  std::filesystem::path path = cfg.output;
  if (path.empty()) {
    const char* ext = cfg.graph_format == GraphFormat::graphml ? "graphml"
                      : cfg.graph_format == GraphFormat::dot   ? "dot"
                                                               : "json";
    path = (cfg.out_dir.empty() ? std::filesystem::path(".") : cfg.out_dir) / fmt::format("network_{}.{}", cfg.period, ext);
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  export_graph(*g, d.nodes, cfg.graph_format, path);
  CommandOutput out;
  Table t;
  t.title = "Export";
  t.columns = {"file", "nodes", "edges"};
  t.rows.push_back({path.string(), std::to_string(g->node_count()), std::to_string(g->edge_count())});
  out.tables.emplace_back("export", std::move(t));
  out.warnings = d.warnings;
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
  f << body;
  if (!f) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

void emit(const CommandOutput& result, const RunConfig& cfg, std::ostream& out) {
  for (std::size_t k = 0; k < result.tables.size(); ++k) {
    if (k > 0) out << "\n";
    out << render(result.tables[k].second, cfg.format);
  }
  if (cfg.out_dir.empty()) return;
  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& [stem, table] : result.tables) {
    write_file(cfg.out_dir / (stem + ".txt"), render_text(table));
    write_file(cfg.out_dir / (stem + ".csv"), render_csv(table));
    if (cfg.format == OutputFormat::json) write_file(cfg.out_dir / (stem + ".json"), render_json(table));
  }
  for (const auto& [name, body] : result.files) write_file(cfg.out_dir / name, body);
}

}  // namespace ergm
