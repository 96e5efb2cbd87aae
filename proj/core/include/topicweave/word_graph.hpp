#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicweave/graph.hpp"
#include "topicweave/text.hpp"

namespace topicweave {

enum class GraphModel { EC, PB, APB };

std::string_view model_name(GraphModel model);
GraphModel parse_model(std::string_view name);

struct GraphBuildConfig {
  GraphModel model = GraphModel::PB;
  int omega = 20;
  double alpha = 0.05;

  void validate() const;
};

// Lemmas become nodes, numbered in order of first appearance in the document.
struct WordGraph {
  std::vector<std::string> lemmas;
  std::unordered_map<std::string, NodeId> lemma_index;
  UndirectedGraph graph;

  int num_nodes() const { return graph.num_nodes(); }
  std::int64_t num_edges() const { return graph.num_edges(); }
  NodeId find(std::string_view lemma) const;  // -1 when absent

  // Keeps the listed nodes (and the edges among them).
  WordGraph induced(const std::vector<bool>& keep) const;
};

// Counts for the paragraph-level co-occurrence null model.
struct CooccurrenceStats {
  std::int64_t N = 1;   // paragraphs in the document
  std::int64_t n1 = 0;  // paragraphs containing word 1
  std::int64_t n2 = 0;  // paragraphs containing word 2
  std::int64_t k = 0;   // paragraphs containing both

  void validate() const;
};

// Probability of exactly `stats.k` shared paragraphs when n2 paragraphs are
// drawn uniformly from N of which n1 are marked. Evaluated in log space.
// A k outside [max(0, n1+n2-N), min(n1, n2)] yields 0, or DomainError when
// `strict` is set.
double cooccurrence_pmf(const CooccurrenceStats& stats, bool strict = false);

// Upper tail P(K >= r), inclusive. `stats.k` is ignored.
double cooccurrence_pvalue(const CooccurrenceStats& stats, std::int64_t r,
                           bool strict = false);

WordGraph build_ec(const AnnotatedDocument& doc, int omega);
WordGraph build_pb(const AnnotatedDocument& doc, int omega);
WordGraph build_apb(const AnnotatedDocument& doc, int omega, double alpha);
WordGraph build_graph(const AnnotatedDocument& doc, const GraphBuildConfig& config);

// Paragraph-level statistics for a lemma pair, as used by the APB filter.
CooccurrenceStats pair_stats(const AnnotatedDocument& doc, std::string_view lemma_a,
                             std::string_view lemma_b);

// "lemma1<TAB>lemma2" per edge, lemma1 < lemma2, lines sorted bytewise.
std::string edge_list_tsv(const WordGraph& graph);
std::string node_table_tsv(const WordGraph& graph);
std::string graphml(const WordGraph& graph);

}  // namespace topicweave
