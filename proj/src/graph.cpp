#include "ergm/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "ergm/errors.hpp"

namespace ergm {

DirectedGraph::DirectedGraph(std::size_t node_count)
    : n_(node_count),
      words_((node_count + 63) / 64),
      out_(n_ * words_, 0),
      in_(n_ * words_, 0),
      outdeg_(n_, 0),
      indeg_(n_, 0) {}

std::vector<NodeId> DirectedGraph::out_neighbors(NodeId v) const {
  std::vector<NodeId> out;
  out.reserve(outdeg_[v]);
  for_each_bit(out_row(v), [&](NodeId k) { out.push_back(k); });
  return out;
}

std::vector<NodeId> DirectedGraph::in_neighbors(NodeId v) const {
  std::vector<NodeId> out;
  out.reserve(indeg_[v]);
  for_each_bit(in_row(v), [&](NodeId k) { out.push_back(k); });
  return out;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (NodeId i = 0; i < n_; ++i) {
    for_each_bit(out_row(i), [&](NodeId j) { out.push_back({i, j}); });
  }
  return out;
}

bool DirectedGraph::add_edge(NodeId from, NodeId to) noexcept {
  if (has_edge(from, to)) return false;
  out_[from * words_ + (to >> 6)] |= std::uint64_t{1} << (to & 63);
  in_[to * words_ + (from >> 6)] |= std::uint64_t{1} << (from & 63);
  ++outdeg_[from];
  ++indeg_[to];
  ++edges_;
  return true;
}

bool DirectedGraph::remove_edge(NodeId from, NodeId to) noexcept {
  if (!has_edge(from, to)) return false;
  out_[from * words_ + (to >> 6)] &= ~(std::uint64_t{1} << (to & 63));
  in_[to * words_ + (from >> 6)] &= ~(std::uint64_t{1} << (from & 63));
  --outdeg_[from];
  --indeg_[to];
  --edges_;
  return true;
}

void DirectedGraph::toggle_edge(NodeId from, NodeId to) noexcept {
  if (!remove_edge(from, to)) add_edge(from, to);
}

BuildReport build_graph(std::size_t node_count, std::span<const Edge> pairs) {
  if (node_count == 0) throw DimensionError("build_graph: node_count must be at least 1");
  BuildReport report{DirectedGraph(node_count)};
  for (const Edge& e : pairs) {
    if (e.sender >= node_count || e.receiver >= node_count) {
      throw OutOfRangeError(fmt::format("edge ({}, {}) is out of range for a graph with {} nodes",
                                        e.sender, e.receiver, node_count));
    }
  }
  for (const Edge& e : pairs) {
    if (e.sender == e.receiver) {
      ++report.dropped_loops;
    } else if (!report.graph.add_edge(e.sender, e.receiver)) {
      ++report.dropped_duplicates;
    }
  }
  return report;
}

NodeSubset::NodeSubset(std::size_t parent_size, std::vector<NodeId> members)
    : parent_size_(parent_size), members_(std::move(members)), index_map_(parent_size, -1) {
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const NodeId m = members_[k];
    if (m >= parent_size_) {
      throw OutOfRangeError(fmt::format("subset member {} is out of range for parent size {}", m, parent_size_));
    }
    if (k > 0 && members_[k - 1] >= m) {
      throw ValidationError("subset members must be strictly ascending");
    }
    index_map_[m] = static_cast<std::int64_t>(k);
  }
}

NodeSubset NodeSubset::all(std::size_t parent_size) {
  std::vector<NodeId> members(parent_size);
  std::iota(members.begin(), members.end(), NodeId{0});
  return NodeSubset(parent_size, std::move(members));
}

std::optional<NodeId> NodeSubset::local_index(NodeId parent) const {
  if (parent >= parent_size_ || index_map_[parent] < 0) return std::nullopt;
  return static_cast<NodeId>(index_map_[parent]);
}

std::vector<std::size_t> weak_component_labels(const DirectedGraph& g, std::size_t* count) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      auto visit = [&](NodeId w) {
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      };
      for_each_bit(g.out_row(v), visit);
      for_each_bit(g.in_row(v), visit);
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

// Iterative Tarjan. Labels are renumbered afterwards so that component ids
// follow the order of each component's smallest node.
std::vector<std::size_t> strong_component_labels(const DirectedGraph& g, std::size_t* count) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId v;
    std::vector<NodeId> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> call;
  std::size_t counter = 0, ncomp = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    call.push_back({root, g.out_neighbors(root)});
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < f.succ.size()) {
        const NodeId w = f.succ[f.next++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, g.out_neighbors(w)});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const NodeId v = f.v;
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        const NodeId parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  std::vector<std::size_t> remap(ncomp, unset);
  std::size_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (remap[comp[v]] == unset) remap[comp[v]] = next++;
    comp[v] = remap[comp[v]];
  }
  if (count) *count = ncomp;
  return comp;
}

NodeSubset largest_component(const DirectedGraph& g, Connectivity mode) {
  const std::size_t n = g.node_count();
  if (n == 0) return NodeSubset(0, {});
  std::size_t ncomp = 0;
  const auto label = mode == Connectivity::weak ? weak_component_labels(g, &ncomp)
                                                : strong_component_labels(g, &ncomp);
  std::vector<std::size_t> sizes(ncomp, 0);
  for (std::size_t l : label) ++sizes[l];
  // Labels are ordered by smallest member, so the first maximum wins ties.
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> members;
  members.reserve(sizes[best]);
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] == best) members.push_back(v);
  }
  return NodeSubset(n, std::move(members));
}

NodeSubset activity_subset(const DirectedGraph& g, std::size_t k) {
  std::vector<NodeId> members;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.indegree(v) + g.outdegree(v) >= k) members.push_back(v);
  }
  return NodeSubset(g.node_count(), std::move(members));
}

DirectedGraph induced_subgraph(const DirectedGraph& g, const NodeSubset& s) {
  if (s.parent_size() != g.node_count()) {
    throw DimensionError(fmt::format("subset parent size {} does not match graph with {} nodes",
                                     s.parent_size(), g.node_count()));
  }
  DirectedGraph out(s.size());
  for (NodeId local_i = 0; local_i < s.size(); ++local_i) {
    const NodeId i = s.members()[local_i];
    for_each_bit(g.out_row(i), [&](NodeId j) {
      if (auto local_j = s.local_index(j)) out.add_edge(local_i, *local_j);
    });
  }
  return out;
}

}  // namespace ergm
