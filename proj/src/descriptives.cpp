#include "ergm/descriptives.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

double density(const DirectedGraph& g) {
  const double n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw UndefinedMetricError("density needs at least two nodes");
  return static_cast<double>(g.edge_count()) / (n * (n - 1));
}

double edgewise_reciprocity(const DirectedGraph& g) {
  if (g.edge_count() == 0) throw UndefinedMetricError("reciprocity is undefined without edges");
  std::size_t mutual = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for_each_bit(g.out_row(i), [&](NodeId j) { mutual += g.has_edge(j, i); });
  }
  return static_cast<double>(mutual) / static_cast<double>(g.edge_count());
}

double transitivity(const DirectedGraph& g) {
  // For each middle node j, every (i in in(j), k in out(j), i != k) is a two-path.
  std::size_t paths = 0, closed = 0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const auto ins = g.in_neighbors(j);
    const auto outs = g.out_neighbors(j);
    for (NodeId i : ins) {
      for (NodeId k : outs) {
        if (i == k) continue;
        ++paths;
        closed += g.has_edge(i, k);
      }
    }
  }
  if (paths == 0) throw UndefinedMetricError("transitivity is undefined without two-paths");
  return static_cast<double>(closed) / static_cast<double>(paths);
}

std::vector<double> betweenness_scores(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<std::vector<NodeId>> out(n);
  for (NodeId v = 0; v < n; ++v) out[v] = g.out_neighbors(v);

  std::vector<NodeId> order;
  std::vector<std::vector<NodeId>> pred(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    order.clear();
    for (NodeId v = 0; v < n; ++v) pred[v].clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : out[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

std::vector<double> eigenvector_scores(const DirectedGraph& g, const EigenvectorOptions& eig) {
  const std::size_t n = g.node_count();
  if (g.edge_count() == 0) throw UndefinedMetricError("eigenvector centrality is undefined without edges");
  const NodeSubset comp = largest_component(g, Connectivity::weak);

  std::vector<std::vector<NodeId>> nbr(comp.size());
  for (NodeId a = 0; a < comp.size(); ++a) {
    const NodeId v = comp.members()[a];
    for (NodeId b = 0; b < comp.size(); ++b) {
      const NodeId w = comp.members()[b];
      if (a != b && (g.has_edge(v, w) || g.has_edge(w, v))) nbr[a].push_back(b);
    }
  }

  std::vector<double> x(comp.size(), 1.0), next(comp.size());
  int iter = 0;
  for (; iter < eig.max_iterations; ++iter) {
    for (std::size_t a = 0; a < nbr.size(); ++a) {
      double s = x[a];
      for (NodeId b : nbr[a]) s += x[b];
      next[a] = s;
    }
    const double mx = *std::max_element(next.begin(), next.end());
    double change = 0.0;
    for (std::size_t a = 0; a < next.size(); ++a) {
      next[a] /= mx;
      change = std::max(change, std::abs(next[a] - x[a]));
    }
    x.swap(next);
    if (change < eig.tolerance) break;
  }
  if (iter == eig.max_iterations) {
    throw NumericalError(fmt::format("eigenvector power iteration did not converge in {} iterations", iter));
  }
  std::vector<double> scores(n, 0.0);
  for (std::size_t a = 0; a < comp.size(); ++a) scores[comp.members()[a]] = x[a];
  return scores;
}

namespace {

double freeman(const std::vector<double>& c, double max_sum) {
  const double cmax = *std::max_element(c.begin(), c.end());
  double sum = 0.0;
  for (double v : c) sum += cmax - v;
  return sum / max_sum;
}

}  // namespace

double centralization(const DirectedGraph& g, CentralityKind kind, const EigenvectorOptions& eig) {
  const std::size_t n = g.node_count();
  if (n < 3) throw UndefinedMetricError("centralization needs at least three nodes");
  const double nm1 = static_cast<double>(n - 1);
  std::vector<double> c(n);
  switch (kind) {
    case CentralityKind::indegree:
      for (NodeId v = 0; v < n; ++v) c[v] = static_cast<double>(g.indegree(v));
      return freeman(c, nm1 * nm1);
    case CentralityKind::outdegree:
      for (NodeId v = 0; v < n; ++v) c[v] = static_cast<double>(g.outdegree(v));
      return freeman(c, nm1 * nm1);
    case CentralityKind::total_degree:
      for (NodeId v = 0; v < n; ++v) c[v] = static_cast<double>(g.indegree(v) + g.outdegree(v));
      return freeman(c, nm1 * 2.0 * nm1);
    case CentralityKind::betweenness:
      return freeman(betweenness_scores(g), nm1 * nm1 * (nm1 - 1.0));
    case CentralityKind::eigenvector:
      return freeman(eigenvector_scores(g, eig), nm1);
  }
  throw Error("unknown centrality kind");
}

namespace {

template <typename F>
std::optional<double> try_metric(F&& f) {
  try {
    return f();
  } catch (const UndefinedMetricError&) {
    return std::nullopt;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

}  // namespace

DescriptiveRow describe(const DirectedGraph& g, std::string label) {
  DescriptiveRow row;
  row.label = std::move(label);
  const double n = static_cast<double>(g.node_count());
  const double e = static_cast<double>(g.edge_count());
  row.nodes = n;
  row.edges = e;
  row.density = try_metric([&] { return density(g); });
  if (n > 0) {
    row.mean_indegree = e / n;
    row.mean_outdegree = e / n;
    row.mean_total_degree = 2.0 * e / n;
  }
  row.edgewise_reciprocity = try_metric([&] { return edgewise_reciprocity(g); });
  row.transitivity = try_metric([&] { return transitivity(g); });
  row.indegree_centralization = try_metric([&] { return centralization(g, CentralityKind::indegree); });
  row.outdegree_centralization = try_metric([&] { return centralization(g, CentralityKind::outdegree); });
  row.total_degree_centralization = try_metric([&] { return centralization(g, CentralityKind::total_degree); });
  row.betweenness_centralization = try_metric([&] { return centralization(g, CentralityKind::betweenness); });
  row.eigenvector_centralization = try_metric([&] { return centralization(g, CentralityKind::eigenvector); });
  return row;
}

}  // namespace ergm
