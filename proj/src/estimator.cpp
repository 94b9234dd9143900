#include "ergm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "ergm/errors.hpp"
#include "ergm/kernels.hpp"

namespace ergm {

double null_pseudo_deviance(double dyads) { return 2.0 * dyads * std::numbers::ln2; }

double akaike(double deviance, std::size_t n_params) { return deviance + 2.0 * static_cast<double>(n_params); }

double bayesian(double deviance, std::size_t n_params, double dyads) {
  return deviance + static_cast<double>(n_params) * std::log(dyads);
}

double FitResult::bic_with(double dyads) const { return bayesian(residual_deviance, n_params, dyads); }

bool FitResult::any_separation() const {
  return std::any_of(separation_flags.begin(), separation_flags.end(), [](bool b) { return b; });
}

double wald_p_value(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

std::string significance_stars(double p) {
  if (!(p == p)) return "";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.1) return ".";
  return "";
}

namespace {

// log(1 + exp(x)) without overflow.
inline double log1pexp(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

inline double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Active columns with identical rows merged into one weighted row; rows of
// weight zero are left out. Row order is first occurrence, so the result is
// deterministic.
struct CompressedDesign {
  std::vector<std::vector<double>> columns;
  std::vector<double> response;
  std::vector<double> weight;

  CompressedDesign(const DyadDesign& d, std::span<const double> w, const std::vector<std::size_t>& active)
      : columns(active.size()) {
    const std::size_t p = active.size();
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(d.n_rows() / 4 + 16);
    std::string key((p + 1) * sizeof(double), '\0');
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
      if (w[r] == 0.0) continue;
      for (std::size_t a = 0; a < p; ++a) {
        const double v = d.at(r, active[a]);
        std::memcpy(key.data() + a * sizeof(double), &v, sizeof(double));
      }
      const double y = d.response()[r];
      std::memcpy(key.data() + p * sizeof(double), &y, sizeof(double));
      const auto [it, inserted] = index.try_emplace(key, response.size());
      if (inserted) {
        for (std::size_t a = 0; a < p; ++a) columns[a].push_back(d.at(r, active[a]));
        response.push_back(y);
        weight.push_back(w[r]);
      } else {
        weight[it->second] += w[r];
      }
    }
  }

  std::size_t rows() const noexcept { return response.size(); }
};

class NewtonSolver {
 public:
  explicit NewtonSolver(const CompressedDesign& d) : d_(d) {
    eta_.resize(d.rows());
    resid_.resize(d.rows());
    info_w_.resize(d.rows());
  }

  double log_likelihood(const std::vector<double>& theta) {
    linear_predictor(theta);
    double ll = 0.0;
    for (std::size_t r = 0; r < eta_.size(); ++r) {
      ll += d_.weight[r] * (d_.response[r] * eta_[r] - log1pexp(eta_[r]));
    }
    return ll;
  }

  // Score and information at theta; returns the log-likelihood.
  double derivatives(const std::vector<double>& theta, Eigen::VectorXd& score, Eigen::MatrixXd& info) {
    const double ll = log_likelihood(theta);
    for (std::size_t r = 0; r < eta_.size(); ++r) {
      const double mu = logistic(eta_[r]);
      resid_[r] = d_.weight[r] * (d_.response[r] - mu);
      info_w_[r] = d_.weight[r] * mu * (1.0 - mu);
    }
    const std::size_t p = d_.columns.size();
    score.resize(static_cast<Eigen::Index>(p));
    info.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t a = 0; a < p; ++a) {
      const auto& xa = d_.columns[a];
      score(static_cast<Eigen::Index>(a)) = kernels::dot(xa, resid_);
      for (std::size_t b = a; b < p; ++b) {
        const double v = kernels::weighted_dot(info_w_, xa, d_.columns[b]);
        info(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
        info(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
      }
    }
    return ll;
  }

 private:
  void linear_predictor(const std::vector<double>& theta) {
    std::fill(eta_.begin(), eta_.end(), 0.0);
    for (std::size_t a = 0; a < d_.columns.size(); ++a) {
      if (theta[a] != 0.0) kernels::axpy(theta[a], d_.columns[a], eta_);
    }
  }

  const CompressedDesign& d_;
  std::vector<double> eta_, resid_, info_w_;
};

bool column_constant(std::span<const double> col, std::span<const double> w, double* value) {
  bool first = true;
  double v0 = 0.0;
  for (std::size_t r = 0; r < col.size(); ++r) {
    if (w[r] == 0.0) continue;
    if (first) {
      v0 = col[r];
      first = false;
    } else if (col[r] != v0) {
      return false;
    }
  }
  if (value) *value = v0;
  return true;
}

[[noreturn]] void report_rank_deficiency(const DyadDesign& d, std::span<const double> w,
                                         const std::vector<std::size_t>& active, const Eigen::MatrixXd& info,
                                         Eigen::Index rank) {
  std::vector<std::string> constant;
  for (std::size_t a = 0; a < active.size(); ++a) {
    if (d.term_names()[active[a]] == "edges") continue;
    if (column_constant(d.column(active[a]), w, nullptr)) constant.push_back(d.term_names()[active[a]]);
  }
  // Pivots beyond the numerical rank are the columns explained by the rest.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(info);
  std::vector<std::string> redundant;
  const auto perm = qr.colsPermutation().indices();
  for (Eigen::Index k = rank; k < perm.size(); ++k) redundant.push_back(d.term_names()[active[static_cast<std::size_t>(perm(k))]]);
  std::string msg = fmt::format("information matrix is singular (rank {} of {}); collinear columns: {}", rank,
                                active.size(), fmt::join(redundant, ", "));
  if (!constant.empty()) msg += fmt::format("; constant columns (unidentifiable alongside edges): {}", fmt::join(constant, ", "));
  throw RankDeficiencyError(msg);
}

}  // namespace

FitResult fit_logistic(const DyadDesign& design, const FitOptions& opts, std::span<const double> weights) {
  const std::size_t n = design.n_rows();
  const std::size_t p_all = design.n_terms();
  if (n == 0 || p_all == 0) throw EmptyDesignError("design has no rows or no terms");
  std::vector<double> unit;
  if (weights.empty()) {
    unit.assign(n, 1.0);
    weights = unit;
  } else if (weights.size() != n) {
    throw DimensionError(fmt::format("{} weights for {} rows", weights.size(), n));
  }

  FitResult res;
  res.term_names = design.term_names();
  res.dropped.assign(p_all, false);
  std::vector<std::size_t> active;
  for (std::size_t c = 0; c < p_all; ++c) {
    double v = 0.0;
    if (column_constant(design.column(c), weights, &v) && v == 0.0) {
      res.dropped[c] = true;
      res.warnings.push_back(fmt::format("term '{}' is zero for every dyad and was dropped", design.term_names()[c]));
    } else {
      active.push_back(c);
    }
  }
  if (active.empty()) throw EmptyDesignError("every design column is identically zero");
  const std::size_t p = active.size();

  double n_eff = 0.0, ties = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    n_eff += weights[r];
    ties += weights[r] * design.response()[r];
  }
  if (ties == 0.0 || ties == n_eff) {
    res.warnings.push_back(ties == 0.0 ? "response is constant 0 (no ties): estimates diverge"
                                       : "response is constant 1 (all ties): estimates diverge");
  }

  std::vector<double> theta(p, 0.0);
  if (!opts.start.empty()) {
    if (opts.start.size() != p_all) throw DimensionError("starting vector does not match the number of terms");
    for (std::size_t a = 0; a < p; ++a) theta[a] = opts.start[active[a]];
  }

  const CompressedDesign compressed(design, weights, active);
  NewtonSolver solver(compressed);
  Eigen::VectorXd score;
  Eigen::MatrixXd info;
  double ll = solver.derivatives(theta, score, info);
  res.log_likelihood_trace.push_back(ll);

  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(info);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(p)) report_rank_deficiency(design, weights, active, info, qr.rank());
  }

  int iter = 0;
  bool converged = false;
  for (;;) {
    if (score.cwiseAbs().maxCoeff() < opts.tolerance) {
      converged = true;
      // one more full step: Newton is quadratic here, so this removes the
      // residual error left by the score tolerance
      const Eigen::VectorXd step = info.ldlt().solve(score);
      std::vector<double> trial(p);
      for (std::size_t a = 0; a < p; ++a) trial[a] = theta[a] + step(static_cast<Eigen::Index>(a));
      const double trial_ll = solver.log_likelihood(trial);
      if (step.allFinite() && std::isfinite(trial_ll) && trial_ll >= ll - 1e-12 * std::max(1.0, std::abs(ll))) {
        theta = trial;
        ll = solver.derivatives(theta, score, info);
      }
      break;
    }
    if (iter >= opts.max_iterations) break;
    ++iter;
    const Eigen::VectorXd step = info.ldlt().solve(score);
    if (!step.allFinite()) {
      res.warnings.push_back("Newton step is not finite; stopping");
      break;
    }
    std::vector<double> trial(p);
    double scale = 1.0, trial_ll = -std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
      for (std::size_t a = 0; a < p; ++a) trial[a] = theta[a] + scale * step(static_cast<Eigen::Index>(a));
      trial_ll = solver.log_likelihood(trial);
      // slack absorbs rounding noise in ll close to the optimum
      if (std::isfinite(trial_ll) && trial_ll >= ll - 1e-12 * std::max(1.0, std::abs(ll))) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.warnings.push_back("step halving could not increase the pseudolikelihood; stopping");
      break;
    }
    theta = trial;
    ll = solver.derivatives(theta, score, info);
    res.log_likelihood_trace.push_back(ll);
  }
  if (!converged) {
    res.warnings.push_back(fmt::format("did not converge in {} iterations (max |score| = {:.3g})", iter,
                                       score.cwiseAbs().maxCoeff()));
  }

  const Eigen::MatrixXd cov = info.ldlt().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  res.coefficients.assign(p_all, nan);
  res.standard_errors.assign(p_all, nan);
  res.exp_coefficients.assign(p_all, nan);
  res.z_values.assign(p_all, nan);
  res.p_values.assign(p_all, nan);
  res.separation_flags.assign(p_all, false);
  res.covariance.assign(p_all, std::vector<double>(p_all, nan));
  for (std::size_t a = 0; a < p; ++a) {
    const std::size_t c = active[a];
    const double b = theta[a];
    const double var = cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
    const double se = var >= 0 ? std::sqrt(var) : nan;
    res.coefficients[c] = b;
    res.standard_errors[c] = se;
    res.exp_coefficients[c] = std::exp(b);
    res.z_values[c] = b / se;
    res.p_values[c] = wald_p_value(b / se);
    res.separation_flags[c] = !std::isfinite(se) || std::abs(b) > opts.separation_threshold || se > opts.separation_se;
    for (std::size_t bb = 0; bb < p; ++bb) {
      res.covariance[c][active[bb]] = cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(bb));
    }
  }
  for (std::size_t c = 0; c < p_all; ++c) {
    if (res.separation_flags[c]) {
      res.warnings.push_back(fmt::format("term '{}' looks separated (b = {:.3f}, SE = {:.3f})", res.term_names[c],
                                         res.coefficients[c], res.standard_errors[c]));
    }
  }

  res.log_likelihood = ll;
  res.n_dyads = n_eff;
  res.n_params = p;
  res.null_deviance = null_pseudo_deviance(n_eff);
  res.residual_deviance = -2.0 * ll;
  res.aic = akaike(res.residual_deviance, p);
  res.bic = bayesian(res.residual_deviance, p, n_eff);
  res.converged = converged;
  res.iterations = iter;
  return res;
}

FitResult fit_mple(const DirectedGraph& g, const NodeTable& attrs, const ModelSpec& spec, const FitOptions& opts) {
  return fit_logistic(build_design(g, attrs, spec), opts);
}

}  // namespace ergm
