#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ergm {

using NodeId = std::uint32_t;

/// Ordered pair (sender, receiver). Also used for dyads.
struct Edge {
  NodeId sender = 0;
  NodeId receiver = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};
using Dyad = Edge;

/// Binary directed graph without self-loops.
///
/// Adjacency is kept as packed bit rows in both directions, so edge lookup is
/// O(1) and shared-partner counts reduce to popcounts over row intersections.
/// Value type; copying duplicates the bit matrix.
class DirectedGraph {
 public:
  explicit DirectedGraph(std::size_t node_count = 0);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has_edge(NodeId from, NodeId to) const noexcept {
    return (out_[from * words_ + (to >> 6)] >> (to & 63)) & 1u;
  }
  std::size_t outdegree(NodeId v) const noexcept { return outdeg_[v]; }
  std::size_t indegree(NodeId v) const noexcept { return indeg_[v]; }

  /// Packed row of receivers of `v` (bit k set iff v -> k).
  std::span<const std::uint64_t> out_row(NodeId v) const noexcept {
    return {out_.data() + v * words_, words_};
  }
  /// Packed row of senders to `v` (bit k set iff k -> v).
  std::span<const std::uint64_t> in_row(NodeId v) const noexcept {
    return {in_.data() + v * words_, words_};
  }

  std::vector<NodeId> out_neighbors(NodeId v) const;
  std::vector<NodeId> in_neighbors(NodeId v) const;

  /// Edges in (sender, receiver) lexicographic order.
  std::vector<Edge> edges() const;

  /// Returns false when the edge was already present / absent. Self-loops and
  /// out-of-range indices are the caller's responsibility.
  bool add_edge(NodeId from, NodeId to) noexcept;
  bool remove_edge(NodeId from, NodeId to) noexcept;
  void toggle_edge(NodeId from, NodeId to) noexcept;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
  std::vector<std::uint32_t> outdeg_;
  std::vector<std::uint32_t> indeg_;
};

/// Calls f(k) for every set bit k of a packed row, in ascending order.
template <typename F>
void for_each_bit(std::span<const std::uint64_t> row, F&& f) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      const int b = __builtin_ctzll(bits);
      f(static_cast<NodeId>(w * 64 + b));
      bits &= bits - 1;
    }
  }
}

struct BuildReport {
  DirectedGraph graph;
  std::size_t dropped_loops = 0;
  std::size_t dropped_duplicates = 0;
};

/// Builds a graph from ordered pairs, dropping self-loops and collapsing
/// duplicates. Throws OutOfRangeError naming the first pair with an index
/// >= node_count.
BuildReport build_graph(std::size_t node_count, std::span<const Edge> pairs);

/// Subset of a parent node set, with members sorted ascending and mapped to
/// 0..size-1 in that order.
class NodeSubset {
 public:
  NodeSubset() = default;
  /// Throws OutOfRangeError / ValidationError on bad members.
  NodeSubset(std::size_t parent_size, std::vector<NodeId> members);

  static NodeSubset all(std::size_t parent_size);

  std::size_t parent_size() const noexcept { return parent_size_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<NodeId>& members() const noexcept { return members_; }
  std::optional<NodeId> local_index(NodeId parent) const;
  bool contains(NodeId parent) const { return local_index(parent).has_value(); }

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;

 private:
  std::size_t parent_size_ = 0;
  std::vector<NodeId> members_;
  std::vector<std::int64_t> index_map_;  // -1 for non-members
};

enum class Connectivity { weak, strong };

/// Largest weakly or strongly connected component. Ties between equally
/// large components go to the one holding the smallest node index.
NodeSubset largest_component(const DirectedGraph& g, Connectivity mode = Connectivity::weak);

/// Nodes with indegree + outdegree >= k in `g` (single pass, no re-peeling).
NodeSubset activity_subset(const DirectedGraph& g, std::size_t k);

/// Edges with both endpoints in `s`, reindexed. Throws DimensionError when
/// s.parent_size() != g.node_count().
DirectedGraph induced_subgraph(const DirectedGraph& g, const NodeSubset& s);

/// Component label per node (labels are 0..count-1 in order of first node).
std::vector<std::size_t> weak_component_labels(const DirectedGraph& g, std::size_t* count = nullptr);
std::vector<std::size_t> strong_component_labels(const DirectedGraph& g, std::size_t* count = nullptr);

}  // namespace ergm
