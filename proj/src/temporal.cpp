#include "ergm/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

DyadDesign pooled_design(const NetworkSeries& series, const NodeTable& attrs, const ModelSpec& spec,
                         const PooledOptions& opts) {
  if (series.size() < 2) {
    throw InsufficientPeriodsError(fmt::format("pooled model needs at least 2 periods, got {}", series.size()));
  }
  const ModelEvaluator eval(spec, attrs);
  const auto dyads = all_dyads(series.node_count);
  DyadDesign pooled(spec.names());
  pooled.reserve(dyads.size() * (series.size() - 1));
  std::vector<double> lag;
  for (std::size_t t = 1; t < series.size(); ++t) {
    pooled.append(build_design(series[t], series[t], eval, dyads, static_cast<std::uint32_t>(t)));
    if (opts.lagged_edges) {
      for (const Dyad& d : dyads) lag.push_back(series[t - 1].has_edge(d.sender, d.receiver) ? 1.0 : 0.0);
    }
  }
  if (opts.lagged_edges) pooled.add_column("edgecov(lag)", std::move(lag));
  return pooled;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

std::mt19937_64 replicate_engine(std::uint64_t seed, int replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate)};
  return std::mt19937_64(seq);
}

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  // Explicit rejection sampling keeps the draw sequence identical across
  // standard library implementations.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

}  // namespace

BtergmFit fit_btergm(const NetworkSeries& series, const NodeTable& attrs, const ModelSpec& spec,
                     const BootstrapOptions& opts) {
  if (opts.replications < 2) {
    throw ConfigError(fmt::format("bootstrap needs at least 2 replications, got {}", opts.replications));
  }
  const DyadDesign design = pooled_design(series, attrs, spec, opts.pooled);
  BtergmFit out{fit_logistic(design, opts.fit), {}};
  const std::size_t p = design.n_terms();

  BootstrapResult& boot = out.bootstrap;
  boot.point_estimates = out.fit.coefficients;
  boot.replications = opts.replications;
  boot.seed = opts.seed;
  boot.mode = opts.mode;

  const std::size_t modeled = series.size() - 1;
  const std::size_t n = series.node_count;
  std::vector<double> weights(design.n_rows());
  FitOptions rep_opts = opts.fit;
  rep_opts.start = out.fit.coefficients;
  for (double& s : rep_opts.start) {
    if (!std::isfinite(s)) s = 0.0;
  }

  for (int k = 0; k < opts.replications; ++k) {
    auto rng = replicate_engine(opts.seed, k);
    if (opts.mode == BootstrapMode::temporal) {
      std::vector<double> mult(modeled, 0.0);
      for (std::size_t d = 0; d < modeled; ++d) mult[draw_index(rng, modeled)] += 1.0;
      for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = mult[design.periods()[r] - 1];
    } else {
      std::vector<double> mult(n, 0.0);
      for (std::size_t d = 0; d < n; ++d) mult[draw_index(rng, n)] += 1.0;
      for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = mult[design.dyads()[r].sender];
    }
    try {
      FitResult rep = fit_logistic(design, rep_opts, weights);
      if (!rep.converged) {
        ++boot.dropped;
        continue;
      }
      boot.replicate_coefficients.push_back(std::move(rep.coefficients));
    } catch (const Error&) {
      ++boot.dropped;
    }
  }

  const double alpha = (1.0 - opts.level) / 2.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  boot.standard_deviation.assign(p, nan);
  boot.ci_lower.assign(p, nan);
  boot.ci_upper.assign(p, nan);
  boot.significant.assign(p, false);
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<double> vals;
    for (const auto& rep : boot.replicate_coefficients) {
      if (std::isfinite(rep[c])) vals.push_back(rep[c]);
    }
    if (vals.size() < 2) continue;
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    boot.standard_deviation[c] = std::sqrt(ss / static_cast<double>(vals.size() - 1));
    std::sort(vals.begin(), vals.end());
    boot.ci_lower[c] = quantile_sorted(vals, alpha);
    boot.ci_upper[c] = quantile_sorted(vals, 1.0 - alpha);
    boot.significant[c] = boot.ci_lower[c] > 0.0 || boot.ci_upper[c] < 0.0;
  }
  if (boot.dropped > 0) {
    out.fit.warnings.push_back(fmt::format("{} of {} bootstrap replicates dropped", boot.dropped, boot.replications));
  }
  return out;
}

DyadDesign formation_design(const DirectedGraph& prev, const DirectedGraph& curr, const NodeTable& attrs,
                            const ModelSpec& spec) {
  if (prev.node_count() != curr.node_count()) {
    throw DimensionError(fmt::format("previous network has {} nodes, current has {}", prev.node_count(),
                                     curr.node_count()));
  }
  const ModelEvaluator eval(spec, attrs);
  DirectedGraph formation = prev;
  for (const Edge& e : curr.edges()) formation.add_edge(e.sender, e.receiver);
  std::vector<Dyad> free;
  for (const Dyad& d : all_dyads(prev.node_count())) {
    if (!prev.has_edge(d.sender, d.receiver)) free.push_back(d);
  }
  if (free.empty()) throw EmptyDesignError("previous network is complete; no tie can form");
  return build_design(formation, curr, eval, free);
}

FitResult fit_formation(const DirectedGraph& prev, const DirectedGraph& curr, const NodeTable& attrs,
                        const ModelSpec& spec, const FormationOptions& opts) {
  FitResult fit = fit_logistic(formation_design(prev, curr, attrs, spec), opts.fit);
  if (opts.bic_dyads == BicDyads::all) {
    const double n = static_cast<double>(prev.node_count());
    fit.bic = fit.bic_with(n * (n - 1.0));
  }
  return fit;
}

}  // namespace ergm
