#include "ergm/sampler.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SampleSet sample_ergm(const NodeTable& attrs, const ModelSpec& spec, std::span<const double> theta,
                      const SamplerControl& control) {
  const std::size_t n = attrs.size();
  if (theta.size() != spec.size()) {
    throw DimensionError(fmt::format("theta has {} entries for {} terms", theta.size(), spec.size()));
  }
  if (n < 2) throw ConfigError("sampling needs at least two nodes");
  const std::size_t dyads = n * (n - 1);
  const std::size_t burn_in = control.burn_in.value_or(10 * dyads);
  const std::size_t thin = control.thin.value_or(dyads);
  if (thin < 1) throw ConfigError("thin must be at least 1");
  if (control.sample_count < 1) throw ConfigError("sample_count must be at least 1");

  const ModelEvaluator eval(spec, attrs);
  std::mt19937_64 rng(control.seed);
  DirectedGraph g(n);
  std::vector<double> delta(eval.size());

  SampleSet out;
  out.term_names = spec.names();
  auto step = [&] {
    const auto i = static_cast<NodeId>(bounded(rng, n));
    auto j = static_cast<NodeId>(bounded(rng, n - 1));
    if (j >= i) ++j;
    eval.change_stats(g, i, j, delta);
    double log_ratio = 0.0;
    for (std::size_t r = 0; r < delta.size(); ++r) {
      const double term = theta[r] * delta[r];
      if (!std::isfinite(term)) {
        throw NumericalError(fmt::format("non-finite acceptance ratio from term '{}'", out.term_names[r]));
      }
      log_ratio += term;
    }
    if (g.has_edge(i, j)) log_ratio = -log_ratio;
    ++out.proposals;
    if (log_ratio >= 0.0 || unit_uniform(rng) < std::exp(log_ratio)) {
      g.toggle_edge(i, j);
      ++out.accepted;
    }
  };

  for (std::size_t s = 0; s < burn_in; ++s) step();
  double density_sum = 0.0;
  for (std::size_t k = 0; k < control.sample_count; ++k) {
    if (k > 0) {
      for (std::size_t s = 0; s < thin; ++s) step();
    }
    out.graphs.push_back(g);
    out.statistics.push_back(eval.global_stats(g));
    density_sum += static_cast<double>(g.edge_count()) / static_cast<double>(dyads);
  }
  out.mean_density = density_sum / static_cast<double>(control.sample_count);
  if (out.mean_density < 0.001 || out.mean_density > 0.999) {
    out.warnings.push_back(fmt::format("possible degeneracy: mean density of retained samples is {:.4f}", out.mean_density));
  }
  return out;
}

}  // namespace ergm
