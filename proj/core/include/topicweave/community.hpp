#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "topicweave/graph.hpp"

namespace topicweave {

// Node -> community membership with contiguous ids 0..n_communities-1.
struct Partition {
  std::vector<int> membership;
  int n_communities = 0;

  // Relabels arbitrary labels densely in order of first appearance.
  static Partition from_labels(const std::vector<int>& labels);
  static Partition singletons(int n_nodes);

  std::vector<std::vector<NodeId>> members() const;
  std::vector<int> sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Community-level edge fractions: e[(i,j)] is the fraction of edge ends
// running from community i to community j (symmetric, sums to 1) and a[i]
// the fraction of edge ends attached to community i.
struct CommunityMatrix {
  std::map<std::pair<int, int>, double> e;
  std::vector<double> a;

  double e_at(int i, int j) const;
};

CommunityMatrix community_matrix(const UndirectedGraph& graph, const Partition& partition);

// Q = sum_i (e_ii - a_i^2). Throws EmptyGraph when the graph has no edges.
double modularity(const UndirectedGraph& graph, const Partition& partition);

// Literal node-pair double sum (1/2M) sum_ij (A_ij - k_i k_j / 2M) delta(c_i, c_j).
// O(n^2); kept as an independent route for cross-checking.
double modularity_pairwise(const UndirectedGraph& graph, const Partition& partition);

struct MergeRecord {
  int community_a;  // surviving id (the smaller one)
  int community_b;  // absorbed id
  double delta_q;
  double q_after;
};

struct MergeTrace {
  double initial_q = 0.0;  // all-singleton partition
  std::vector<MergeRecord> merges;
  // Number of leading merges that produce the best partition (0 = singletons).
  std::size_t best_cut = 0;

  double best_q() const { return best_cut == 0 ? initial_q : merges[best_cut - 1].q_after; }
};

struct FastGreedyResult {
  Partition partition;
  MergeTrace trace;
  double q = 0.0;
};

// Agglomerative greedy modularity maximisation. Starts from singletons and
// repeatedly merges the adjacent pair with the largest gain until no adjacent
// pair is left; equal gains go to the pair with the smallest (min id, max id).
// Gains are tracked as exact integers scaled by 4M^2, so ties are exact.
FastGreedyResult fast_greedy(const UndirectedGraph& graph);

// Partition reached after applying the first `count` merges of `trace`.
Partition replay_merges(int n_nodes, const MergeTrace& trace, std::size_t count);

// Uniform simple graph with exactly n_nodes nodes and n_edges edges.
UndirectedGraph random_gnm(int n_nodes, std::int64_t n_edges, std::mt19937_64& rng);

// Deterministic per-trial stream derived from (seed, trial).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Mean best fast-greedy Q over `trials` G(n, m) graphs.
double mean_random_modularity(int n_nodes, std::int64_t n_edges, int trials,
                              std::uint64_t seed);

struct NormalizedModularity {
  double q = 0.0;
  double q_s_mean = 0.0;
  double q_n = 0.0;
};

inline constexpr int kDefaultNullTrials = 30;

// The null graphs have as many nodes as `graph` has non-isolated ones, so
// isolated words shift neither Q nor Q_N.
NormalizedModularity normalized_modularity(const UndirectedGraph& graph,
                                           int trials = kDefaultNullTrials,
                                           std::uint64_t seed = 42);

}  // namespace topicweave
