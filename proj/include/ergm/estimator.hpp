#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergm/design.hpp"

namespace ergm {

struct FitOptions {
  double tolerance = 1e-8;  // on max |score|
  int max_iterations = 50;
  double separation_threshold = 15.0;  // |theta| above this is flagged
  double separation_se = 100.0;        // so is an SE above this
  std::vector<double> start;           // optional starting point
};

struct FitResult {
  std::vector<std::string> term_names;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<std::vector<double>> covariance;
  std::vector<double> exp_coefficients;
  std::vector<double> z_values;
  std::vector<double> p_values;
  std::vector<bool> separation_flags;
  std::vector<bool> dropped;  // all-zero columns; NaN estimates

  double log_likelihood = 0.0;
  double null_deviance = 0.0;
  double residual_deviance = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double n_dyads = 0.0;
  std::size_t n_params = 0;
  bool converged = false;
  int iterations = 0;

  std::vector<double> log_likelihood_trace;  // one entry per accepted iterate
  std::vector<std::string> warnings;

  /// BIC with an alternative dyad count (e.g. all n(n-1) pairs).
  double bic_with(double dyads) const;
  bool any_separation() const;
};

/// Maximum pseudolikelihood fit: Newton-Raphson on the logistic likelihood
/// without an implicit intercept, with step halving. `weights` are optional
/// frequency weights (used by the bootstrap). Throws EmptyDesignError for an
/// empty design and RankDeficiencyError, naming the columns, when the
/// information matrix is singular.
FitResult fit_logistic(const DyadDesign& design, const FitOptions& opts = {},
                       std::span<const double> weights = {});

/// build_design + fit_logistic.
FitResult fit_mple(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec,
                   const FitOptions& opts = {});

/// Deviance of the model with every tie probability at 1/2.
double null_pseudo_deviance(double dyads);
/// deviance + 2p
double akaike(double deviance, std::size_t n_params);
/// deviance + p ln(dyads)
double bayesian(double deviance, std::size_t n_params, double dyads);

/// Two-sided normal p-value.
double wald_p_value(double z);

/// "***" p < .001, "**" p < .01, "*" p < .05, "." p < .1, else "".
std::string significance_stars(double p);

}  // namespace ergm
