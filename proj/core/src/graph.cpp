#include "topicweave/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace topicweave {

UndirectedGraph UndirectedGraph::from_edges(int n_nodes, std::span<const Edge> edges) {
  UndirectedGraph g(n_nodes);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes)
      throw std::out_of_range("edge endpoint outside node range");
    if (u == v) continue;
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  std::int64_t ends = 0;
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    ends += static_cast<std::int64_t>(adj.size());
  }
  g.n_edges_ = ends / 2;
  return g;
}

bool UndirectedGraph::has_edge(NodeId u, NodeId v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(n_edges_));
  for (NodeId u = 0; u < num_nodes(); ++u)
    for (NodeId v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

std::pair<UndirectedGraph, std::vector<NodeId>> UndirectedGraph::induced_subgraph(
    const std::vector<bool>& keep) const {
  std::vector<NodeId> new_id(adjacency_.size(), -1);
  std::vector<NodeId> old_id;
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (keep[v]) {
      new_id[v] = static_cast<NodeId>(old_id.size());
      old_id.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (auto [u, v] : edges())
    if (keep[u] && keep[v]) kept.push_back({new_id[u], new_id[v]});
  return {from_edges(static_cast<int>(old_id.size()), kept), std::move(old_id)};
}

}  // namespace topicweave
