#pragma once

#include <vector>

#include "topicweave/community.hpp"
#include "topicweave/errors.hpp"
#include "topicweave/text.hpp"
#include "topicweave/word_graph.hpp"

namespace topicweave {

inline constexpr int kUnlabeled = -1;

// counts[paragraph][community]: occurrences of the community's words.
struct LabelCountMatrix {
  std::vector<std::vector<int>> counts;
  int n_communities = 0;

  int row_total(std::size_t paragraph) const;
};

enum class EmptyParagraphPolicy { Inherit, Unlabeled };

struct ReductionStep {
  int erased_community;  // id in the partition the step was computed on
  double sigma;
  int n_communities_after;
  int n_nodes_after;
};

struct ReductionResult {
  WordGraph graph;  // surviving nodes only
  Partition partition;
  std::vector<ReductionStep> log;
};

class DegenerateReduction : public Error {
 public:
  DegenerateReduction(const std::string& what, std::vector<ReductionStep> log)
      : Error(ErrorKind::Degenerate, "Degenerate: " + what), log_(std::move(log)) {}
  const std::vector<ReductionStep>& log() const { return log_; }

 private:
  std::vector<ReductionStep> log_;
};

struct SegmentOptions {
  EmptyParagraphPolicy empty_paragraphs = EmptyParagraphPolicy::Inherit;
};

struct SegmentationResult {
  std::string doc_id;
  GraphBuildConfig config;
  int n_s = 0;
  std::vector<int> subjects;  // per paragraph, 0..n_c-1 or kUnlabeled
  WordGraph final_graph;
  Partition final_partition;  // ids equal subject ids
  std::vector<ReductionStep> reduction_log;
  LabelCountMatrix label_counts;
  int initial_communities = 0;
  bool under_segmented = false;
};

// Tokens whose lemma is not a node of `graph` contribute nothing.
LabelCountMatrix count_labels(const AnnotatedDocument& doc, const WordGraph& graph,
                              const Partition& partition);

// Argmax per row, smallest community id on ties; all-zero rows are resolved by
// `policy` (inherit from the nearest preceding labeled paragraph, else the
// nearest following one).
std::vector<int> assign_subjects(const LabelCountMatrix& counts,
                                 EmptyParagraphPolicy policy = EmptyParagraphPolicy::Inherit);

// Fraction of tokens in the paragraphs dominated by `community` that carry a
// different label. 1 when the community dominates no paragraph.
double overlap_index(int community, const LabelCountMatrix& counts,
                     const std::vector<int>& subjects);

// Greedy partition; a graph without edges is a single community.
Partition detect_communities(const UndirectedGraph& graph);

// Removes degree-0 nodes unless nothing would remain connected.
WordGraph drop_isolated(const WordGraph& graph);

// While there are more than n_s communities: erase the community with the
// largest overlap index (ties: fewer nodes, then smaller id) and re-detect
// communities on the remaining induced subgraph, minus nodes left isolated.
ReductionResult reduce_communities(const AnnotatedDocument& doc, const WordGraph& graph,
                                   const Partition& initial, int n_s);

SegmentationResult segment(const AnnotatedDocument& doc, const GraphBuildConfig& config,
                           int n_s, const SegmentOptions& options = {});

}  // namespace topicweave
