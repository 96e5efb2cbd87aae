#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace topicweave {

using NodeId = int;

struct Edge {
  NodeId u;
  NodeId v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph: no self-loops, no parallel edges. Adjacency lists
// are kept sorted so neighbor scans are deterministic.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int n_nodes) : adjacency_(n_nodes) {}

  // Self-loops are dropped and duplicates collapse.
  static UndirectedGraph from_edges(int n_nodes, std::span<const Edge> edges);

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  std::int64_t num_edges() const { return n_edges_; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Every edge once, with u < v, sorted.
  std::vector<Edge> edges() const;

  // Keeps the nodes with keep[v] == true, renumbered in increasing id order.
  // Returns the subgraph and the new -> old id map.
  std::pair<UndirectedGraph, std::vector<NodeId>> induced_subgraph(
      const std::vector<bool>& keep) const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::int64_t n_edges_ = 0;
};

}  // namespace topicweave
