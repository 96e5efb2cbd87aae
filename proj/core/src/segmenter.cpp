#include "topicweave/segmenter.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace topicweave {

int LabelCountMatrix::row_total(std::size_t paragraph) const {
  const auto& row = counts.at(paragraph);
  return std::accumulate(row.begin(), row.end(), 0);
}

LabelCountMatrix count_labels(const AnnotatedDocument& doc, const WordGraph& graph,
                              const Partition& partition) {
  if (static_cast<int>(partition.membership.size()) != graph.num_nodes())
    throw std::invalid_argument("partition does not cover the graph nodes");
  LabelCountMatrix m;
  m.n_communities = partition.n_communities;
  m.counts.reserve(doc.paragraphs.size());
  for (const auto& para : doc.paragraphs) {
    std::vector<int> row(partition.n_communities, 0);
    for (const auto& tok : para) {
      const NodeId v = graph.find(tok.lemma);
      if (v >= 0) ++row[partition.membership[v]];
    }
    m.counts.push_back(std::move(row));
  }
  return m;
}

std::vector<int> assign_subjects(const LabelCountMatrix& counts, EmptyParagraphPolicy policy) {
  const auto n = counts.counts.size();
  std::vector<int> subjects(n, kUnlabeled);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& row = counts.counts[p];
    int best = kUnlabeled, best_count = 0;
    for (int c = 0; c < static_cast<int>(row.size()); ++c) {
      if (row[c] > best_count) {
        best = c;
        best_count = row[c];
      }
    }
    subjects[p] = best;
  }
  if (policy == EmptyParagraphPolicy::Unlabeled) return subjects;

  auto resolved = subjects;
  int previous = kUnlabeled;
  for (std::size_t p = 0; p < n; ++p) {
    if (subjects[p] != kUnlabeled) previous = subjects[p];
    else resolved[p] = previous;
  }
  int following = kUnlabeled;
  for (std::size_t p = n; p-- > 0;) {
    if (subjects[p] != kUnlabeled) following = subjects[p];
    else if (resolved[p] == kUnlabeled) resolved[p] = following;
  }
  // No paragraph carries any surviving token: everything shares one subject.
  if (following == kUnlabeled)
    std::fill(resolved.begin(), resolved.end(), 0);
  return resolved;
}

double overlap_index(int community, const LabelCountMatrix& counts,
                     const std::vector<int>& subjects) {
  if (community < 0 || community >= counts.n_communities)
    throw std::out_of_range("community id outside the label-count matrix");
  std::int64_t own = 0, total = 0;
  for (std::size_t p = 0; p < subjects.size(); ++p) {
    if (subjects[p] != community) continue;
    own += counts.counts[p][community];
    total += counts.row_total(p);
  }
  if (total == 0) return 1.0;
  return 1.0 - static_cast<double>(own) / static_cast<double>(total);
}

Partition detect_communities(const UndirectedGraph& graph) {
  if (graph.num_edges() == 0)
    return Partition::from_labels(std::vector<int>(graph.num_nodes(), 0));
  return fast_greedy(graph).partition;
}

WordGraph drop_isolated(const WordGraph& graph) {
  if (graph.num_edges() == 0) return graph;
  std::vector<bool> keep(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) keep[v] = graph.graph.degree(v) > 0;
  return graph.induced(keep);
}

ReductionResult reduce_communities(const AnnotatedDocument& doc, const WordGraph& graph,
                                   const Partition& initial, int n_s) {
  if (n_s < 1) throw std::invalid_argument("n_s must be >= 1");
  ReductionResult r{graph, initial, {}};
  while (r.partition.n_communities > n_s) {
    const auto counts = count_labels(doc, r.graph, r.partition);
    const auto subjects = assign_subjects(counts, EmptyParagraphPolicy::Unlabeled);
    const auto sizes = r.partition.sizes();

    int chosen = 0;
    double chosen_sigma = overlap_index(0, counts, subjects);
    for (int c = 1; c < r.partition.n_communities; ++c) {
      const double sigma = overlap_index(c, counts, subjects);
      if (sigma > chosen_sigma || (sigma == chosen_sigma && sizes[c] < sizes[chosen])) {
        chosen = c;
        chosen_sigma = sigma;
      }
    }

    std::vector<bool> keep(r.graph.num_nodes());
    for (NodeId v = 0; v < r.graph.num_nodes(); ++v)
      keep[v] = r.partition.membership[v] != chosen;
    if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; }))
      throw DegenerateReduction("community erasure emptied the graph", std::move(r.log));

    r.graph = drop_isolated(r.graph.induced(keep));
    r.partition = detect_communities(r.graph.graph);
    r.log.push_back({chosen, chosen_sigma, r.partition.n_communities, r.graph.num_nodes()});
  }
  return r;
}

SegmentationResult segment(const AnnotatedDocument& doc, const GraphBuildConfig& config,
                           int n_s, const SegmentOptions& options) {
  if (n_s < 1) throw std::invalid_argument("n_s must be >= 1");
  SegmentationResult out;
  out.doc_id = doc.doc_id;
  out.config = config;
  out.n_s = n_s;

  auto graph = drop_isolated(build_graph(doc, config));
  auto partition = detect_communities(graph.graph);
  out.initial_communities = partition.n_communities;
  if (partition.n_communities > n_s) {
    auto reduced = reduce_communities(doc, graph, partition, n_s);
    graph = std::move(reduced.graph);
    partition = std::move(reduced.partition);
    out.reduction_log = std::move(reduced.log);
  }

  // Subject ids follow the order in which communities first win a paragraph;
  // communities that win nothing come last, in their original order.
  const auto raw = assign_subjects(count_labels(doc, graph, partition),
                                   EmptyParagraphPolicy::Unlabeled);
  std::vector<int> rename(partition.n_communities, -1);
  int next = 0;
  for (int s : raw)
    if (s != kUnlabeled && rename[s] < 0) rename[s] = next++;
  for (auto& id : rename)
    if (id < 0) id = next++;
  for (auto& c : partition.membership) c = rename[c];

  out.label_counts = count_labels(doc, graph, partition);
  out.subjects = assign_subjects(out.label_counts, options.empty_paragraphs);
  out.final_graph = std::move(graph);
  out.final_partition = std::move(partition);
  out.under_segmented = out.final_partition.n_communities < n_s;
  return out;
}

}  // namespace topicweave
