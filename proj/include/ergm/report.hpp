#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergm/descriptives.hpp"
#include "ergm/estimator.hpp"
#include "ergm/temporal.hpp"

namespace ergm {

/// A rendered table: every cell is already formatted, so text, CSV and JSON
/// output carry identical values.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> footer;
  std::vector<std::string> notes;
};

enum class OutputFormat { text, csv, json };

std::string render_text(const Table& t);
std::string render_csv(const Table& t);
std::string render_json(const Table& t);
std::string render(const Table& t, OutputFormat f);

/// Fixed-point with `decimals` places; NaN/inf render as "NA", negative
/// zero as positive.
std::string format_fixed(double x, int decimals = 3);
std::string format_optional(const std::optional<double>& x, int decimals = 3);

Table descriptive_table(const std::vector<DescriptiveRow>& rows, std::string title = "Network descriptives");

/// Coefficient table: b, SE, exp(b), p-value, stars, separation flag, with a
/// null/residual deviance, AIC and BIC footer.
Table fit_table(const FitResult& fit, std::string title = "ERGM (MPLE)");

/// B, bootstrap SE, exp(B), percentile CI; "*" marks CIs excluding zero.
Table btergm_table(const BtergmFit& fit, std::string title = "Temporal ERGM (pooled MPLE, bootstrap CI)");

/// Coefficient (SE) with stars plus a log-likelihood / AIC / BIC footer.
Table formation_table(const FitResult& fit, std::string title);

}  // namespace ergm
