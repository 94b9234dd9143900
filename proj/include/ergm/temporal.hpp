#pragma once

#include <cstdint>
#include <vector>

#include "ergm/design.hpp"
#include "ergm/estimator.hpp"
#include "ergm/ingest.hpp"

namespace ergm {

struct PooledOptions {
  /// Adds an "edgecov(lag)" column: 1 when the dyad was a tie in t-1.
  bool lagged_edges = false;
};

/// Stacks the within-period designs of periods 2..T (period 1 is conditioned
/// on). Row period tags are the 0-based period index. Throws
/// InsufficientPeriodsError when the series has fewer than two periods.
DyadDesign pooled_design(const NetworkSeries& series, const NodeTable& attrs, const ModelSpec& spec,
                         const PooledOptions& opts = {});

enum class BootstrapMode {
  temporal,      // resample modeled periods with replacement
  sender_block,  // resample sender nodes with replacement, all their rows
};

struct BootstrapOptions {
  int replications = 100;
  std::uint64_t seed = 12345;
  BootstrapMode mode = BootstrapMode::temporal;
  double level = 0.95;
  PooledOptions pooled;
  FitOptions fit;
};

struct BootstrapResult {
  std::vector<std::vector<double>> replicate_coefficients;  // kept replicates x terms
  std::vector<double> point_estimates;
  std::vector<double> standard_deviation;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<bool> significant;  // CI excludes zero
  int replications = 0;
  int dropped = 0;
  std::uint64_t seed = 0;
  BootstrapMode mode = BootstrapMode::temporal;
};

struct BtergmFit {
  FitResult fit;
  BootstrapResult bootstrap;
};

/// Pooled TERGM by MPLE with percentile bootstrap intervals. Replicate k
/// draws from a generator seeded with (seed, k), so results do not depend on
/// evaluation order. Throws ConfigError for replications < 2.
BtergmFit fit_btergm(const NetworkSeries& series, const NodeTable& attrs, const ModelSpec& spec,
                     const BootstrapOptions& opts = {});

/// Percentile with linear interpolation between order statistics
/// (the usual "type 7" definition). `sorted` must be ascending.
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Formation design: free dyads are pairs absent in `prev`, the response is
/// presence in `curr`, and change statistics are taken on prev U curr.
/// Throws DimensionError on mismatched sizes, EmptyDesignError if `prev` is
/// complete.
DyadDesign formation_design(const DirectedGraph& prev, const DirectedGraph& curr, const NodeTable& attrs,
                            const ModelSpec& spec);

enum class BicDyads { free, all };

struct FormationOptions {
  FitOptions fit;
  BicDyads bic_dyads = BicDyads::free;
};

FitResult fit_formation(const DirectedGraph& prev, const DirectedGraph& curr, const NodeTable& attrs,
                        const ModelSpec& spec, const FormationOptions& opts = {});

}  // namespace ergm
