#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"
#include "ergm/terms.hpp"

namespace ergm {

/// Metropolis-Hastings control. Unset burn_in / thin default to
/// 10 n(n-1) and n(n-1) toggles.
struct SamplerControl {
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thin;
  std::size_t sample_count = 1;
  std::uint64_t seed = 1;
};

struct SampleSet {
  std::vector<DirectedGraph> graphs;
  std::vector<std::vector<double>> statistics;  // h(g) per retained graph
  std::vector<std::string> term_names;
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  double mean_density = 0.0;
  std::vector<std::string> warnings;
};

/// Draws from P(g) proportional to exp(theta . h(g)) with single-dyad toggle
/// proposals, starting from the empty graph on attrs.size() nodes.
/// Deterministic for a given seed. Throws DimensionError on a theta length
/// mismatch, ConfigError on an invalid control, NumericalError when an
/// acceptance ratio is not finite.
SampleSet sample_ergm(const NodeTable& attrs, const ModelSpec& spec, std::span<const double> theta,
                      const SamplerControl& control);

}  // namespace ergm
