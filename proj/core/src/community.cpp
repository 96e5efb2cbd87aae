#include "topicweave/community.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "topicweave/errors.hpp"
#include "topicweave/parallel.hpp"

namespace topicweave {

Partition Partition::from_labels(const std::vector<int>& labels) {
  Partition p;
  p.membership.resize(labels.size());
  std::map<int, int> dense;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = dense.try_emplace(labels[v], p.n_communities);
    if (inserted) ++p.n_communities;
    p.membership[v] = it->second;
  }
  return p;
}

Partition Partition::singletons(int n_nodes) {
  Partition p;
  p.membership.resize(n_nodes);
  std::iota(p.membership.begin(), p.membership.end(), 0);
  p.n_communities = n_nodes;
  return p;
}

std::vector<std::vector<NodeId>> Partition::members() const {
  std::vector<std::vector<NodeId>> out(n_communities);
  for (std::size_t v = 0; v < membership.size(); ++v)
    out[membership[v]].push_back(static_cast<NodeId>(v));
  return out;
}

std::vector<int> Partition::sizes() const {
  std::vector<int> out(n_communities, 0);
  for (int c : membership) ++out[c];
  return out;
}

double CommunityMatrix::e_at(int i, int j) const {
  auto it = e.find({i, j});
  return it == e.end() ? 0.0 : it->second;
}

namespace {

void check_cover(const UndirectedGraph& graph, const Partition& partition) {
  if (static_cast<int>(partition.membership.size()) != graph.num_nodes())
    throw std::invalid_argument("partition does not cover the graph nodes");
  if (graph.num_edges() == 0) throw EmptyGraph("modularity is undefined without edges");
}

}  // namespace

CommunityMatrix community_matrix(const UndirectedGraph& graph, const Partition& partition) {
  check_cover(graph, partition);
  const double two_m = 2.0 * static_cast<double>(graph.num_edges());
  CommunityMatrix cm;
  cm.a.assign(partition.n_communities, 0.0);
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const int cv = partition.membership[v];
    cm.a[cv] += graph.degree(v) / two_m;
    for (NodeId w : graph.neighbors(v)) cm.e[{cv, partition.membership[w]}] += 1.0 / two_m;
  }
  return cm;
}

double modularity(const UndirectedGraph& graph, const Partition& partition) {
  check_cover(graph, partition);
  // Integer accumulation: internal edge ends and degree sums per community.
  std::vector<std::int64_t> internal(partition.n_communities, 0);
  std::vector<std::int64_t> degree(partition.n_communities, 0);
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const int cv = partition.membership[v];
    degree[cv] += graph.degree(v);
    for (NodeId w : graph.neighbors(v))
      if (partition.membership[w] == cv) ++internal[cv];
  }
  const double two_m = 2.0 * static_cast<double>(graph.num_edges());
  double q = 0.0;
  for (int c = 0; c < partition.n_communities; ++c) {
    const double e_cc = internal[c] / two_m;
    const double a_c = degree[c] / two_m;
    q += e_cc - a_c * a_c;
  }
  return q;
}

double modularity_pairwise(const UndirectedGraph& graph, const Partition& partition) {
  check_cover(graph, partition);
  const double two_m = 2.0 * static_cast<double>(graph.num_edges());
  double sum = 0.0;
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    for (NodeId j = 0; j < graph.num_nodes(); ++j) {
      if (partition.membership[i] != partition.membership[j]) continue;
      const double a_ij = graph.has_edge(i, j) ? 1.0 : 0.0;
      sum += a_ij - graph.degree(i) * static_cast<double>(graph.degree(j)) / two_m;
    }
  }
  return sum / two_m;
}

namespace {

struct Candidate {
  std::int64_t key;  // 2M * E_ab - d_a * d_b; the gain is key / (2 M^2)
  int a;
  int b;

  bool operator<(const Candidate& o) const {
    if (key != o.key) return key > o.key;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

struct Cluster {
  std::map<int, std::int64_t> links;  // neighbor community -> edges between
  std::int64_t degree = 0;
  std::int64_t internal = 0;
};

class GreedyMerger {
 public:
  explicit GreedyMerger(const UndirectedGraph& g)
      : two_m_(2 * g.num_edges()), clusters_(g.num_nodes()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      clusters_[v].degree = g.degree(v);
      for (NodeId w : g.neighbors(v)) clusters_[v].links.emplace(w, 1);
      scaled_q_ -= clusters_[v].degree * clusters_[v].degree;
    }
    for (auto [u, v] : g.edges()) heap_.insert(candidate(u, v));
  }

  bool done() const { return heap_.empty(); }
  std::int64_t scaled_q() const { return scaled_q_; }
  double scale() const { return static_cast<double>(two_m_) * static_cast<double>(two_m_); }

  // Executes the best merge; returns (survivor, absorbed, scaled gain).
  std::tuple<int, int, std::int64_t> merge_best() {
    const Candidate best = *heap_.begin();
    const int s = best.a, o = best.b;
    auto& cs = clusters_[s];
    auto& co = clusters_[o];
    const std::int64_t between = cs.links.at(o);

    for (auto [k, _] : cs.links) heap_.erase(candidate(s, k));
    for (auto [k, _] : co.links)
      if (k != s) heap_.erase(candidate(o, k));

    for (auto [k, e] : co.links) {
      if (k == s) continue;
      auto& kl = clusters_[k].links;
      kl.erase(o);
      kl[s] += e;
    }
    if (co.links.size() > cs.links.size()) std::swap(cs.links, co.links);
    for (auto [k, e] : co.links) cs.links[k] += e;
    cs.links.erase(s);
    cs.links.erase(o);
    co.links.clear();

    const std::int64_t gain = 2 * (two_m_ * between - cs.degree * co.degree);
    cs.internal += co.internal + between;
    cs.degree += co.degree;
    co.degree = 0;
    co.internal = 0;
    scaled_q_ += gain;

    for (auto [k, _] : cs.links) heap_.insert(candidate(s, k));
    return {s, o, gain};
  }

 private:
  Candidate candidate(int x, int y) const {
    const int a = std::min(x, y), b = std::max(x, y);
    const std::int64_t e = clusters_[a].links.at(b);
    return {two_m_ * e - clusters_[a].degree * clusters_[b].degree, a, b};
  }

  std::int64_t two_m_;
  std::vector<Cluster> clusters_;
  std::set<Candidate> heap_;
  std::int64_t scaled_q_ = 0;  // Q * (2M)^2
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Partition replay_merges(int n_nodes, const MergeTrace& trace, std::size_t count) {
  std::vector<int> parent(n_nodes);
  std::iota(parent.begin(), parent.end(), 0);
  // Community ids in the trace are the smallest node id of the community, and
  // the survivor of a merge is always the smaller id.
  for (std::size_t t = 0; t < count; ++t) {
    const auto& m = trace.merges.at(t);
    parent[find_root(parent, m.community_b)] = find_root(parent, m.community_a);
  }
  std::vector<int> labels(n_nodes);
  for (int v = 0; v < n_nodes; ++v) labels[v] = find_root(parent, v);
  return Partition::from_labels(labels);
}

FastGreedyResult fast_greedy(const UndirectedGraph& graph) {
  if (graph.num_edges() == 0) throw EmptyGraph("fast_greedy needs at least one edge");
  GreedyMerger merger(graph);
  const double scale = merger.scale();

  FastGreedyResult result;
  auto& trace = result.trace;
  trace.initial_q = merger.scaled_q() / scale;
  std::int64_t best = merger.scaled_q();
  while (!merger.done()) {
    auto [a, b, gain] = merger.merge_best();
    trace.merges.push_back({a, b, gain / scale, merger.scaled_q() / scale});
    if (merger.scaled_q() > best) {
      best = merger.scaled_q();
      trace.best_cut = trace.merges.size();
    }
  }
  result.partition = replay_merges(graph.num_nodes(), trace, trace.best_cut);
  result.q = best / scale;
  return result;
}

UndirectedGraph random_gnm(int n_nodes, std::int64_t n_edges, std::mt19937_64& rng) {
  const std::int64_t n = n_nodes;
  const std::int64_t total = n * (n - 1) / 2;
  if (n_nodes < 0 || n_edges < 0 || n_edges > total)
    throw InfeasibleGraph("cannot place " + std::to_string(n_edges) + " edges on " +
                          std::to_string(n_nodes) + " nodes");

  // Floyd's sampling of distinct pair indices; sample the complement when dense.
  const bool complement = n_edges > total / 2;
  const std::int64_t draw = complement ? total - n_edges : n_edges;
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(draw) * 2);
  for (std::int64_t j = total - draw; j < total; ++j) {
    std::uniform_int_distribution<std::int64_t> pick(0, j);
    const auto t = pick(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n_edges));
  if (complement) {
    std::int64_t index = 0;
    for (int u = 0; u < n_nodes; ++u)
      for (int v = u + 1; v < n_nodes; ++v, ++index)
        if (!chosen.contains(index)) edges.push_back({u, v});
  } else {
    std::vector<std::int64_t> sorted(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());
    std::int64_t u = 0, row_start = 0;
    for (auto index : sorted) {
      while (index >= row_start + (n - 1 - u)) {
        row_start += n - 1 - u;
        ++u;
      }
      edges.push_back({static_cast<int>(u), static_cast<int>(u + 1 + index - row_start)});
    }
  }
  return UndirectedGraph::from_edges(n_nodes, edges);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double mean_random_modularity(int n_nodes, std::int64_t n_edges, int trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::int64_t n = n_nodes;
  if (n_nodes < 0 || n_edges < 0 || n_edges > n * (n - 1) / 2)
    throw InfeasibleGraph("cannot place " + std::to_string(n_edges) + " edges on " +
                          std::to_string(n_nodes) + " nodes");
  std::vector<double> best(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    auto rng = trial_rng(seed, t);
    best[t] = fast_greedy(random_gnm(n_nodes, n_edges, rng)).q;
  });
  return std::accumulate(best.begin(), best.end(), 0.0) / trials;
}

NormalizedModularity normalized_modularity(const UndirectedGraph& graph, int trials,
                                           std::uint64_t seed) {
  NormalizedModularity out;
  out.q = fast_greedy(graph).q;
  int connected = 0;
  for (int v = 0; v < graph.num_nodes(); ++v)
    if (graph.degree(v) > 0) ++connected;
  out.q_s_mean = mean_random_modularity(connected, graph.num_edges(), trials, seed);
  out.q_n = out.q - out.q_s_mean;
  return out;
}

}  // namespace topicweave
