#include "ergm/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

#include "ergm/csv.hpp"

namespace ergm {

std::string format_fixed(double x, int decimals) {
  if (!std::isfinite(x)) return "NA";
  std::string s = fmt::format("{:.{}f}", x, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_optional(const std::optional<double>& x, int decimals) {
  return x ? format_fixed(*x, decimals) : std::string{};
}

std::string render_text(const Table& t) {
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  if (!t.title.empty()) out += t.title + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) s += "  ";
      // First column left-aligned (labels), the rest right-aligned.
      s += c == 0 ? fmt::format("{:<{}}", cells[c], width[c]) : fmt::format("{:>{}}", cells[c], width[c]);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  out += line(t.columns);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  total += 2 * (width.empty() ? 0 : width.size() - 1);
  out += std::string(total, '-') + "\n";
  for (const auto& row : t.rows) out += line(row);
  if (!t.footer.empty()) {
    out += std::string(total, '-') + "\n";
    std::size_t kw = 0;
    for (const auto& [k, v] : t.footer) kw = std::max(kw, k.size());
    for (const auto& [k, v] : t.footer) out += fmt::format("{:<{}}  {}\n", k, kw, v);
  }
  for (const auto& n : t.notes) out += "Note: " + n + "\n";
  return out;
}

std::string render_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += ',';
      out += csv_escape(cells[c]);
    }
    out += '\n';
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
  // Footer rows go below a blank line as (key, value) pairs in the first two
  // columns so the file stays a single delimited table.
  if (!t.footer.empty()) {
    out += '\n';
    for (const auto& [k, v] : t.footer) {
      std::vector<std::string> cells(std::max<std::size_t>(t.columns.size(), 2));
      cells[0] = k;
      cells[1] = v;
      line(cells);
    }
  }
  return out;
}

std::string render_json(const Table& t) {
  nlohmann::ordered_json j;
  j["title"] = t.title;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t c = 0; c < row.size() && c < t.columns.size(); ++c) r[t.columns[c]] = row[c];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  nlohmann::ordered_json footer = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.footer) footer[k] = v;
  j["footer"] = std::move(footer);
  j["notes"] = t.notes;
  return j.dump(2) + "\n";
}

std::string render(const Table& t, OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return render_text(t);
    case OutputFormat::csv: return render_csv(t);
    case OutputFormat::json: return render_json(t);
  }
  return {};
}

Table descriptive_table(const std::vector<DescriptiveRow>& rows, std::string title) {
  Table t;
  t.title = std::move(title);
  t.columns = {"network",
               "nodes",
               "edges",
               "density",
               "mean_indegree",
               "mean_outdegree",
               "mean_total_degree",
               "reciprocity",
               "transitivity",
               "indegree_centralization",
               "outdegree_centralization",
               "degree_centralization",
               "betweenness_centralization",
               "eigenvector_centralization"};
  for (const auto& r : rows) {
    t.rows.push_back({r.label, format_fixed(r.nodes, 0), format_fixed(r.edges, 0), format_optional(r.density),
                      format_optional(r.mean_indegree), format_optional(r.mean_outdegree),
                      format_optional(r.mean_total_degree), format_optional(r.edgewise_reciprocity),
                      format_optional(r.transitivity), format_optional(r.indegree_centralization),
                      format_optional(r.outdegree_centralization), format_optional(r.total_degree_centralization),
                      format_optional(r.betweenness_centralization), format_optional(r.eigenvector_centralization)});
  }
  t.notes.push_back("blank cells are undefined for that network (e.g. reciprocity without edges)");
  return t;
}

Table fit_table(const FitResult& fit, std::string title) {
  Table t;
  t.title = std::move(title);
  t.columns = {"term", "b", "SE", "exp(b)", "p-value", "sig", "flag"};
  for (std::size_t r = 0; r < fit.term_names.size(); ++r) {
    std::string flag;
    if (fit.dropped[r]) flag = "dropped";
    else if (fit.separation_flags[r]) flag = "separation";
    t.rows.push_back({fit.term_names[r], format_fixed(fit.coefficients[r]), format_fixed(fit.standard_errors[r]),
                      format_fixed(fit.exp_coefficients[r]), format_fixed(fit.p_values[r]),
                      significance_stars(fit.p_values[r]), flag});
  }
  t.footer = {{"Null pseudo-deviance", format_fixed(fit.null_deviance)},
              {"Residual pseudo-deviance", format_fixed(fit.residual_deviance)},
              {"AIC", format_fixed(fit.aic)},
              {"BIC", format_fixed(fit.bic)},
              {"Dyads", format_fixed(fit.n_dyads, 0)},
              {"Converged", fit.converged ? "yes" : "no"},
              {"Iterations", std::to_string(fit.iterations)}};
  t.notes.push_back("significance: *** p < 0.001; ** p < 0.01; * p < 0.05; . p < 0.1; estimation: MPLE");
  t.notes.push_back("MPLE Wald p-values are anti-conservative when dyads are dependent");
  return t;
}

Table btergm_table(const BtergmFit& fit, std::string title) {
  Table t;
  t.title = std::move(title);
  const auto& b = fit.bootstrap;
  t.columns = {"term", "B", "SE", "exp(B)", "ci_lower", "ci_upper", "sig", "flag"};
  for (std::size_t r = 0; r < fit.fit.term_names.size(); ++r) {
    std::string flag;
    if (fit.fit.dropped[r]) flag = "dropped";
    else if (fit.fit.separation_flags[r]) flag = "separation";
    t.rows.push_back({fit.fit.term_names[r], format_fixed(fit.fit.coefficients[r]),
                      format_fixed(b.standard_deviation[r]), format_fixed(fit.fit.exp_coefficients[r]),
                      format_fixed(b.ci_lower[r]), format_fixed(b.ci_upper[r]), b.significant[r] ? "*" : "", flag});
  }
  t.footer = {{"Replications", std::to_string(b.replications)},
              {"Kept replicates", std::to_string(b.replicate_coefficients.size())},
              {"Dropped replicates", std::to_string(b.dropped)},
              {"Seed", std::to_string(b.seed)},
              {"Resampling", b.mode == BootstrapMode::temporal ? "temporal" : "sender_block"},
              {"Pooled dyads", format_fixed(fit.fit.n_dyads, 0)},
              {"Residual pseudo-deviance", format_fixed(fit.fit.residual_deviance)}};
  t.notes.push_back("SE is the bootstrap standard deviation; coefficients whose 95% CI excludes zero are marked *");
  return t;
}

Table formation_table(const FitResult& fit, std::string title) {
  Table t;
  t.title = std::move(title);
  t.columns = {"term", "b", "SE", "b (SE)", "exp(b)", "p-value", "flag"};
  for (std::size_t r = 0; r < fit.term_names.size(); ++r) {
    std::string flag;
    if (fit.dropped[r]) flag = "dropped";
    else if (fit.separation_flags[r]) flag = "separation";
    const std::string b = format_fixed(fit.coefficients[r]);
    const std::string se = format_fixed(fit.standard_errors[r]);
    t.rows.push_back({fit.term_names[r], b, se, fmt::format("{}{} ({})", b, significance_stars(fit.p_values[r]), se),
                      format_fixed(fit.exp_coefficients[r]), format_fixed(fit.p_values[r]), flag});
  }
  t.footer = {{"Log likelihood", format_fixed(fit.log_likelihood)},
              {"AIC", format_fixed(fit.aic)},
              {"BIC", format_fixed(fit.bic)},
              {"Free dyads", format_fixed(fit.n_dyads, 0)},
              {"Converged", fit.converged ? "yes" : "no"}};
  t.notes.push_back("significance: *** p < 0.001; ** p < 0.01; * p < 0.05; . p < 0.1");
  return t;
}

}  // namespace ergm
