#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// work on a plain adjacency matrix and never call into the library's
// statistic code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/ingest.hpp"
#include "ergm/terms.hpp"

namespace testsupport {

using Matrix = std::vector<std::vector<int>>;

inline ergm::DirectedGraph graph_from(std::size_t n, std::initializer_list<ergm::Edge> edges) {
  ergm::DirectedGraph g(n);
  for (const auto& e : edges) g.add_edge(e.sender, e.receiver);
  return g;
}

inline ergm::DirectedGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  ergm::DirectedGraph g(n);
  for (ergm::NodeId i = 0; i < n; ++i)
    for (ergm::NodeId j = 0; j < n; ++j)
      if (i != j && coin(rng)) g.add_edge(i, j);
  return g;
}

inline Matrix adjacency(const ergm::DirectedGraph& g) {
  const std::size_t n = g.node_count();
  Matrix a(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) a[e.sender][e.receiver] = 1;
  return a;
}

/// Attributes "color" (A, B, C) and "flag" (Yes, No) drawn at random.
inline ergm::NodeTable random_attributes(std::size_t n, std::mt19937_64& rng) {
  ergm::NodeTable t = ergm::NodeTable::anonymous(n);
  std::uniform_int_distribution<int> three(0, 2), two(0, 1);
  std::vector<std::uint16_t> color(n), flag(n);
  for (std::size_t v = 0; v < n; ++v) {
    color[v] = static_cast<std::uint16_t>(three(rng));
    flag[v] = static_cast<std::uint16_t>(two(rng));
  }
  t.add_attribute("color", {"A", "B", "C"}, color);
  t.add_attribute("flag", {"Yes", "No"}, flag);
  return t;
}

/// Every term kind, with several decays for the weighted terms.
inline ergm::ModelSpec all_kinds_spec() {
  using ergm::TermSpec;
  return ergm::ModelSpec({TermSpec::edges(), TermSpec::mutual(), TermSpec::gwesp(0.5), TermSpec::gwesp(0.0),
                          TermSpec::gwesp(1.7), TermSpec::gwdsp(0.5), TermSpec::gwdsp(0.0), TermSpec::gwdsp(2.2),
                          TermSpec::isolates(), TermSpec::odegpop(), TermSpec::nodematch("color"),
                          TermSpec::nodematch("flag"), TermSpec::nodematch("color", "B"),
                          TermSpec::nodematch("flag", "No")});
}

inline double gw_weight(double tau, int k) {
  return std::exp(tau) * (1.0 - std::pow(1.0 - std::exp(-tau), k));
}

/// Global statistics straight from the definitions, O(n^3).
inline std::vector<double> brute_stats(const Matrix& a, const ergm::NodeTable& attrs, const ergm::ModelSpec& spec) {
  const int n = static_cast<int>(a.size());
  auto two_paths = [&](int i, int j) {
    int c = 0;
    for (int m = 0; m < n; ++m)
      if (m != i && m != j && a[i][m] && a[m][j]) ++c;
    return c;
  };
  std::vector<double> out;
  for (const auto& t : spec.terms()) {
    double s = 0.0;
    switch (t.kind) {
      case ergm::TermKind::edges:
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s += a[i][j];
        break;
      case ergm::TermKind::mutual:
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) s += a[i][j] * a[j][i];
        break;
      case ergm::TermKind::gwesp: {
        std::vector<int> ep(n + 1, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (a[i][j]) ++ep[two_paths(i, j)];
        for (int k = 1; k <= n; ++k) s += gw_weight(*t.decay, k) * ep[k];
        break;
      }
      case ergm::TermKind::gwdsp: {
        std::vector<int> dp(n + 1, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) ++dp[two_paths(i, j)];
        for (int k = 1; k <= n; ++k) s += gw_weight(*t.decay, k) * dp[k];
        break;
      }
      case ergm::TermKind::isolates:
        for (int v = 0; v < n; ++v) {
          int d = 0;
          for (int u = 0; u < n; ++u) d += a[v][u] + a[u][v];
          s += d == 0;
        }
        break;
      case ergm::TermKind::outdegree_popularity:
        // sum over edges of the receiver's outdegree
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (a[i][j])
              for (int k = 0; k < n; ++k) s += a[j][k];
        break;
      case ergm::TermKind::nodematch_uniform: {
        const auto& at = attrs.attribute(t.attribute);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (a[i][j] && at.codes[i] == at.codes[j]) s += 1;
        break;
      }
      case ergm::TermKind::nodematch_differential: {
        const auto& at = attrs.attribute(t.attribute);
        const auto level = *at.level_code(t.level);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (a[i][j] && at.codes[i] == level && at.codes[j] == level) s += 1;
        break;
      }
    }
    out.push_back(s);
  }
  return out;
}

/// Toggle (i, j) in the matrix and difference the brute-force statistics.
inline std::vector<double> brute_change(Matrix a, const ergm::NodeTable& attrs, const ergm::ModelSpec& spec, int i,
                                        int j) {
  a[i][j] = 1;
  auto on = brute_stats(a, attrs, spec);
  a[i][j] = 0;
  auto off = brute_stats(a, attrs, spec);
  for (std::size_t r = 0; r < on.size(); ++r) on[r] -= off[r];
  return on;
}

/// Participant-sample marginals (N = 441), in declared level order.
struct Marginal {
  const char* attribute;
  std::vector<const char*> levels;
  std::vector<int> counts;
};

inline const std::vector<Marginal>& sample_marginals() {
  static const std::vector<Marginal> m = {
      {"region", {"International", "Midwest", "Northeast", "South", "West"}, {32, 77, 111, 169, 52}},
      {"gender", {"Female", "Male"}, {301, 140}},
      {"role", {"Teacher", "Administrator", "Technology/Media Staff", "Other"}, {83, 91, 162, 105}},
      {"grade", {"Generalist", "Primary", "Secondary", "Post-Secondary"}, {215, 57, 153, 16}},
      {"experience", {"<=10", "11-20", "20+"}, {115, 150, 176}},
      {"expert", {"Yes", "No"}, {20, 421}},
      {"willing", {"Yes", "No"}, {69, 372}},
      {"group", {"AC", "DL", "M", "N", "PD", "PS"}, {74, 50, 58, 119, 74, 66}},
  };
  return m;
}

/// Largest-remainder apportionment of `counts` to a total of n.
inline std::vector<int> apportion(const std::vector<int>& counts, std::size_t n) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::vector<int> out(counts.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int assigned = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double exact = counts[k] * static_cast<double>(n) / total;
    out[k] = static_cast<int>(std::floor(exact));
    assigned += out[k];
    rem.emplace_back(exact - out[k], k);
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto x, auto y) { return x.first > y.first; });
  for (std::size_t r = 0; assigned < static_cast<int>(n); ++r, ++assigned) ++out[rem[r].second];
  return out;
}

/// n nodes whose categorical columns reproduce the sample marginals (exactly
/// at n = 441, proportionally otherwise), shuffled independently per column.
/// Country follows region: International nodes are Non-US.
inline ergm::NodeTable participant_table(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> ids(n);
  for (std::size_t v = 0; v < n; ++v) ids[v] = "p" + std::to_string(1000 + v);
  ergm::NodeTable t(ids);
  std::vector<std::uint16_t> region_codes;
  for (const auto& m : sample_marginals()) {
    const auto counts = apportion(m.counts, n);
    std::vector<std::uint16_t> codes;
    for (std::size_t k = 0; k < counts.size(); ++k) codes.insert(codes.end(), counts[k], static_cast<std::uint16_t>(k));
    std::shuffle(codes.begin(), codes.end(), rng);
    std::vector<std::string> levels(m.levels.begin(), m.levels.end());
    if (std::string(m.attribute) == "region") region_codes = codes;
    t.add_attribute(m.attribute, levels, codes);
  }
  std::vector<std::uint16_t> country(n);
  for (std::size_t v = 0; v < n; ++v) country[v] = region_codes[v] == 0 ? 1 : 0;
  t.add_attribute("country", {"US", "Non-US"}, country);
  return t;
}

/// Writes `t` as an attributes file in the default column layout.
inline void write_attributes(const std::filesystem::path& path, const ergm::NodeTable& t,
                             const std::vector<bool>& facilitator = {}) {
  static const char* order[] = {"region", "country", "gender", "role", "grade",
                                "experience", "expert", "willing", "group"};
  std::ofstream out(path);
  out << "id,facilitator";
  for (const char* a : order) out << "," << a;
  out << "\n";
  for (ergm::NodeId v = 0; v < t.size(); ++v) {
    out << t.id(v) << "," << (!facilitator.empty() && facilitator[v] ? "Yes" : "No");
    for (const char* a : order) out << "," << t.attribute(a).value(v);
    out << "\n";
  }
}

/// Homophilous random interactions over a 72-day window.
inline void write_events(const std::filesystem::path& path, const ergm::NodeTable& t, std::size_t count,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& group = t.attribute("group");
  std::uniform_int_distribution<ergm::NodeId> node(0, static_cast<ergm::NodeId>(t.size() - 1));
  std::uniform_int_distribution<int> day(1, 72);
  std::bernoulli_distribution keep_cross(0.35), reply(0.3);
  std::ofstream out(path);
  out << "sender_id,receiver_id,day\n";
  std::size_t written = 0;
  while (written < count) {
    const auto i = node(rng), j = node(rng);
    if (i == j) continue;
    if (group.codes[i] != group.codes[j] && !keep_cross(rng)) continue;
    const int d = day(rng);
    out << t.id(i) << "," << t.id(j) << "," << d << "\n";
    ++written;
    if (reply(rng) && written < count) {
      out << t.id(j) << "," << t.id(i) << "," << std::min(72, d + 1) << "\n";
      ++written;
    }
  }
}

/// Fresh directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ergmkit_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
