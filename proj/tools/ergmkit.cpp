// ergmkit: descriptive statistics, ERGM / TERGM fitting by MPLE, formation
// models, simulation and graph export for timestamped interaction data.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ergm/app.hpp"
#include "ergm/config.hpp"
#include "ergm/errors.hpp"
#include "ergm/kernels.hpp"

namespace {

struct Flags {
  std::string config, edges, attrs, subsample, terms, out_dir, format, connectivity, breakpoints, bootstrap,
      bic_dyads, theta, graph_format, period, output, kernels;
  std::uint64_t seed = 0;
  int replications = 0, horizon = 0, max_iterations = 0;
  double tolerance = 0;
  std::size_t nodes = 0, samples = 0, burn_in = 0, thin = 0;
  bool include_facilitators = false, lagged_edges = false;
};

enum Group : unsigned { kData = 1, kModel = 2, kBoot = 4, kSim = 8, kExport = 16 };

void add_options(CLI::App* sub, Flags& f, unsigned groups) {
  sub->add_option("--config", f.config, "JSON run configuration (flags override it)");
  sub->add_option("--out-dir", f.out_dir, "write .txt/.csv (and .json) tables here");
  sub->add_option("--format", f.format, "stdout format: text, csv or json");
  sub->add_option("--kernels", f.kernels, "numeric kernels: auto, scalar or avx2");
  if (groups & (kData | kSim)) sub->add_option("--attrs", f.attrs, "node attributes file");
  if (groups & kData) {
    sub->add_option("--edges", f.edges, "interaction events file (sender_id, receiver_id, day)");
    sub->add_option("--subsample", f.subsample, "lc, active:K or none");
    sub->add_option("--connectivity", f.connectivity, "component type for lc: weak or strong");
    sub->add_option("--breakpoints", f.breakpoints, "period day ranges, e.g. 1-18,19-36,37-55,56-72");
    sub->add_option("--horizon", f.horizon, "last day of the observation window");
    sub->add_flag("--include-facilitators", f.include_facilitators, "keep events to or from facilitators");
  }
  if (groups & (kModel | kSim)) sub->add_option("--terms", f.terms, "model terms, e.g. \"edges + mutual + gwesp(0.5)\"");
  if (groups & kModel) {
    sub->add_option("--tolerance", f.tolerance, "Newton convergence tolerance on the score");
    sub->add_option("--max-iterations", f.max_iterations, "Newton iteration limit");
  }
  if (groups & (kBoot | kSim)) sub->add_option("--seed", f.seed, "random seed");
  if (groups & kBoot) {
    sub->add_option("--replications", f.replications, "bootstrap replications");
    sub->add_option("--bootstrap", f.bootstrap, "temporal or sender");
    sub->add_flag("--lagged-edges", f.lagged_edges, "add a lagged-tie covariate to the pooled model");
  }
  if (groups & kSim) {
    sub->add_option("--nodes", f.nodes, "node count when no attribute file is given");
    sub->add_option("--theta", f.theta, "coefficients, comma separated, in term order");
    sub->add_option("--samples", f.samples, "number of retained graphs");
    sub->add_option("--burn-in", f.burn_in, "toggles before the first retained graph");
    sub->add_option("--thin", f.thin, "toggles between retained graphs");
  }
  if (groups & kExport) {
    sub->add_option("--graph-format", f.graph_format, "graphml, dot or json-edgelist");
    sub->add_option("--period", f.period, "aggregate (default) or a period label such as Q2");
    sub->add_option("--output", f.output, "output file");
  }
}

ergm::RunConfig build_config(const CLI::App* sub, const Flags& f) {
  using namespace ergm;
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  auto set = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  if (set("--edges")) cfg.edges = f.edges;
  if (set("--attrs")) cfg.attrs = f.attrs;
  if (set("--subsample")) cfg.subsample = parse_subsample(f.subsample);
  if (set("--connectivity")) cfg.connectivity = parse_connectivity(f.connectivity);
  if (set("--breakpoints")) cfg.breakpoints = parse_breakpoints(f.breakpoints);
  if (set("--horizon")) cfg.horizon = f.horizon;
  if (set("--include-facilitators")) cfg.exclude_facilitators = !f.include_facilitators;
  if (set("--terms")) cfg.terms = f.terms;
  if (set("--tolerance")) cfg.fit.tolerance = f.tolerance;
  if (set("--max-iterations")) cfg.fit.max_iterations = f.max_iterations;
  if (set("--seed")) cfg.seed = f.seed;
  if (set("--replications")) cfg.replications = f.replications;
  if (set("--bootstrap")) cfg.bootstrap_mode = parse_bootstrap_mode(f.bootstrap);
  if (set("--lagged-edges")) cfg.lagged_edges = f.lagged_edges;
  if (set("--out-dir")) cfg.out_dir = f.out_dir;
  if (set("--format")) cfg.format = parse_output_format(f.format);
  if (set("--nodes")) cfg.sim_nodes = f.nodes;
  if (set("--theta")) cfg.theta = parse_theta(f.theta);
  if (set("--samples")) cfg.samples = f.samples;
  if (set("--burn-in")) cfg.burn_in = f.burn_in;
  if (set("--thin")) cfg.thin = f.thin;
  if (set("--graph-format")) cfg.graph_format = parse_graph_format(f.graph_format);
  if (set("--period")) cfg.period = f.period;
  if (set("--output")) cfg.output = f.output;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergmkit: network descriptives and (temporal) ERGM estimation by maximum pseudolikelihood"};
  app.require_subcommand(1, 1);
  Flags f;
  auto* describe = app.add_subcommand("describe", "descriptive metrics for the aggregate and each period");
  auto* fit = app.add_subcommand("fit", "cross-sectional ERGM on the aggregate network");
  auto* tergm = app.add_subcommand("tergm", "pooled temporal ERGM with bootstrap confidence intervals");
  auto* formation = app.add_subcommand("formation", "formation model for each consecutive pair of periods");
  auto* simulate = app.add_subcommand("simulate", "sample graphs from an ERGM by Metropolis-Hastings");
  auto* exportc = app.add_subcommand("export", "write a network as graphml, dot or json-edgelist");
  add_options(describe, f, kData);
  add_options(fit, f, kData | kModel);
  add_options(tergm, f, kData | kModel | kBoot);
  add_options(formation, f, kData | kModel);
  add_options(simulate, f, kSim);
  add_options(exportc, f, kData | kExport);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!f.kernels.empty() && f.kernels != "auto") {
      if (f.kernels == "scalar") ergm::kernels::select(ergm::kernels::Backend::scalar);
      else if (f.kernels == "avx2") ergm::kernels::select(ergm::kernels::Backend::avx2);
      else throw ergm::ConfigError("--kernels must be auto, scalar or avx2");
    }
    const ergm::RunConfig cfg = build_config(sub, f);
    ergm::CommandOutput result;
    if (sub == describe) result = ergm::run_describe(cfg);
    else if (sub == fit) result = ergm::run_fit(cfg);
    else if (sub == tergm) result = ergm::run_temporal(cfg, ergm::TemporalMode::pooled);
    else if (sub == formation) result = ergm::run_temporal(cfg, ergm::TemporalMode::formation);
    else if (sub == simulate) result = ergm::run_simulate(cfg);
    else result = ergm::run_export(cfg);
    ergm::emit(result, cfg, std::cout);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
  } catch (const ergm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
