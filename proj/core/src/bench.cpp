#include "topicweave/bench.hpp"

#include <cmath>
#include <cstdio>

#include "topicweave/errors.hpp"
#include "topicweave/eval.hpp"
#include "topicweave/parallel.hpp"
#include "topicweave/segmenter.hpp"

namespace topicweave {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::EC: return "EC";
    case Method::PB: return "PB";
    case Method::APB: return "APB";
    case Method::BowK: return "BOW-K";
    case Method::BowEM: return "BOW-EM";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const auto lower = to_lower(name);
  for (auto m : all_methods())
    if (to_lower(method_name(m)) == lower) return m;
  throw InputError("unknown method '" + std::string(name) + "'");
}

std::vector<Method> all_methods() {
  return {Method::EC, Method::PB, Method::APB, Method::BowK, Method::BowEM};
}

std::vector<int> predict_subjects(const AnnotatedDocument& doc, int n_s, Method method,
                                  const BenchConfig& config, std::uint64_t seed) {
  switch (method) {
    case Method::EC:
    case Method::PB:
    case Method::APB: {
      GraphBuildConfig gc;
      gc.model = method == Method::EC   ? GraphModel::EC
                 : method == Method::PB ? GraphModel::PB
                                        : GraphModel::APB;
      gc.omega = config.omega;
      gc.alpha = config.alpha;
      return segment(doc, gc, n_s).subjects;
    }
    case Method::BowK:
      return kmeans_cluster(bow_vectors(doc).rows, n_s, seed, config.kmeans).labels;
    case Method::BowEM:
      return em_cluster(bow_vectors(doc).rows, n_s, seed, config.em).labels;
  }
  throw InputError("unknown method");
}

std::vector<std::vector<std::optional<double>>> evaluate_cell(const BenchCell& cell,
                                                              const Lexicon& lexicon,
                                                              const BenchConfig& config) {
  std::vector<std::vector<std::optional<double>>> out(
      cell.docs.size(), std::vector<std::optional<double>>(config.methods.size()));
  parallel_for(cell.docs.size(), [&](std::size_t d) {
    const auto& gen = cell.docs[d];
    const auto doc = annotate(RawDocument{gen.doc_id, gen.paragraphs}, lexicon, config.annotate);
    const auto seed = derive_seed(config.seed, d);
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      try {
        const auto labels = predict_subjects(doc, cell.n_s, config.methods[m], config, seed);
        out[d][m] = accuracy(gen.gold, labels).gamma_fraction;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Degenerate) throw;
      }
    }
  });
  return out;
}

std::vector<BenchRow> run_cells(const std::vector<BenchCell>& cells, const Lexicon& lexicon,
                                const BenchConfig& config) {
  std::vector<BenchRow> rows;
  for (const auto& cell : cells) {
    const auto scores = evaluate_cell(cell, lexicon, config);
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      std::vector<double> values;
      for (const auto& per_doc : scores)
        if (per_doc[m]) values.push_back(*per_doc[m]);
      double mean = 0.0, var = 0.0;
      for (double v : values) mean += v;
      if (!values.empty()) mean /= static_cast<double>(values.size());
      for (double v : values) var += (v - mean) * (v - mean);
      if (values.size() > 1) var /= static_cast<double>(values.size() - 1);
      rows.push_back({cell.mode, cell.n_s, cell.n_p, config.methods[m], mean, std::sqrt(var),
                      static_cast<int>(values.size()),
                      static_cast<int>(scores.size() - values.size())});
    }
  }
  return rows;
}

std::vector<BenchRow> run_benchmark(const Corpus& corpus, const BenchGrid& grid,
                                    const Lexicon& lexicon, const BenchConfig& config) {
  std::vector<BenchCell> cells;
  for (auto mode : grid.modes)
    for (int n_s : grid.n_s)
      for (int n_p : grid.n_p) {
        DatasetSpec spec;
        spec.mode = mode;
        spec.n_s = n_s;
        spec.n_p = n_p;
        spec.n_docs = grid.n_docs;
        spec.interleave = grid.interleave;
        spec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(mode) * 1000 + n_s,
                                static_cast<std::uint64_t>(n_p));
        cells.push_back({mode, n_s, n_p, generate_dataset(corpus, spec)});
      }
  return run_cells(cells, lexicon, config);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "mode,n_s,n_p,method,mean_gamma,std_gamma,n_docs\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%s,%d,%d,%s,%.6f,%.6f,%d\n",
                  std::string(mode_name(r.mode)).c_str(), r.n_s, r.n_p,
                  std::string(method_name(r.method)).c_str(), r.mean_gamma, r.std_gamma,
                  r.n_docs);
    out += line;
  }
  return out;
}

}  // namespace topicweave
