#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

/// E / (n (n-1)). Throws UndefinedMetricError for n < 2.
double density(const DirectedGraph& g);

/// Share of edges whose reverse edge is also present. Throws for E = 0.
double edgewise_reciprocity(const DirectedGraph& g);

/// Closed directed two-paths i->j->k (i != k, with i->k) over all directed
/// two-paths. Throws when the graph has no two-path.
double transitivity(const DirectedGraph& g);

enum class CentralityKind { indegree, outdegree, total_degree, betweenness, eigenvector };

struct EigenvectorOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

/// Freeman centralization sum_i (c_max - c_i) / M with M the largest value the
/// sum can take for n nodes. Throws UndefinedMetricError for n < 3.
double centralization(const DirectedGraph& g, CentralityKind kind, const EigenvectorOptions& eig = {});

/// Unnormalized directed shortest-path betweenness (Brandes).
std::vector<double> betweenness_scores(const DirectedGraph& g);

/// Eigenvector centrality of the symmetrized graph, scaled so the maximum is
/// 1. Nodes outside the largest weak component get 0. Power iteration runs on
/// A + I to keep bipartite components from oscillating.
std::vector<double> eigenvector_scores(const DirectedGraph& g, const EigenvectorOptions& eig = {});

struct DescriptiveRow {
  std::string label;
  double nodes = 0;
  double edges = 0;
  std::optional<double> density;
  std::optional<double> mean_indegree;
  std::optional<double> mean_outdegree;
  std::optional<double> mean_total_degree;
  std::optional<double> edgewise_reciprocity;
  std::optional<double> transitivity;
  std::optional<double> indegree_centralization;
  std::optional<double> outdegree_centralization;
  std::optional<double> total_degree_centralization;
  std::optional<double> betweenness_centralization;
  std::optional<double> eigenvector_centralization;
};

/// All metrics; any that are undefined for `g` are left empty.
DescriptiveRow describe(const DirectedGraph& g, std::string label = {});

}  // namespace ergm
