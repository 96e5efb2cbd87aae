#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "topicweave/word_graph.hpp"

namespace topicweave {
namespace {

// Zipf-ish vocabulary so that frequent words recur across paragraphs.
AnnotatedDocument synthetic_document(int paragraphs, int tokens_per_paragraph, int vocab) {
  std::mt19937_64 rng(3);
  std::vector<double> weights(vocab);
  for (int i = 0; i < vocab; ++i) weights[i] = 1.0 / (i + 1);
  std::discrete_distribution<int> word(weights.begin(), weights.end());
  AnnotatedDocument doc;
  doc.doc_id = "bench";
  for (int p = 0; p < paragraphs; ++p) {
    Paragraph para;
    for (int t = 0; t < tokens_per_paragraph; ++t) {
      auto w = "w" + std::to_string(word(rng));
      para.push_back({w, w, Pos::Noun});
    }
    doc.paragraphs.push_back(std::move(para));
  }
  return doc;
}

void BM_BuildGraph(benchmark::State& state, GraphModel model) {
  const auto doc = synthetic_document(static_cast<int>(state.range(0)), 60, 2000);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_graph(doc, {model, 20, 0.05}).num_edges());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(doc.token_count()));
}
BENCHMARK_CAPTURE(BM_BuildGraph, ec, GraphModel::EC)->Arg(10)->Arg(100);
BENCHMARK_CAPTURE(BM_BuildGraph, pb, GraphModel::PB)->Arg(10)->Arg(100);
BENCHMARK_CAPTURE(BM_BuildGraph, apb, GraphModel::APB)->Arg(10)->Arg(100);

void BM_PValue(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cooccurrence_pvalue({n, n / 3, n / 4, 0}, n / 8));
}
BENCHMARK(BM_PValue)->Arg(30)->Arg(1000);

}  // namespace
}  // namespace topicweave
