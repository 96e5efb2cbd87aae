#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topicweave/baselines.hpp"
#include "topicweave/dataset.hpp"
#include "topicweave/text.hpp"

namespace topicweave {

enum class Method { EC, PB, APB, BowK, BowEM };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

struct BenchConfig {
  std::vector<Method> methods = all_methods();
  int omega = 20;
  double alpha = 0.05;
  std::uint64_t seed = 42;
  AnnotateOptions annotate;
  KMeansOptions kmeans;
  EmOptions em;
};

struct BenchCell {
  DatasetMode mode = DatasetMode::CGS;
  int n_s = 2;
  int n_p = 3;
  std::vector<GeneratedDocument> docs;
};

struct BenchGrid {
  std::vector<DatasetMode> modes{DatasetMode::CGS};
  std::vector<int> n_s{2, 3, 4};
  std::vector<int> n_p{3, 4, 5};
  int n_docs = 200;
  bool interleave = false;
};

struct BenchRow {
  DatasetMode mode;
  int n_s;
  int n_p;
  Method method;
  double mean_gamma;
  double std_gamma;  // sample standard deviation; 0 for a single document
  int n_docs;        // documents the method produced a labeling for
  int n_failed;      // documents where the method raised a pipeline error
};

// Predicted paragraph labels for one document with n_s subjects.
std::vector<int> predict_subjects(const AnnotatedDocument& doc, int n_s, Method method,
                                  const BenchConfig& config, std::uint64_t seed);

// Gamma fraction per (document, method); nullopt marks a failed method.
std::vector<std::vector<std::optional<double>>> evaluate_cell(const BenchCell& cell,
                                                              const Lexicon& lexicon,
                                                              const BenchConfig& config);

std::vector<BenchRow> run_cells(const std::vector<BenchCell>& cells, const Lexicon& lexicon,
                                const BenchConfig& config);

// Generates one dataset per (mode, n_s, n_p) cell and evaluates it.
std::vector<BenchRow> run_benchmark(const Corpus& corpus, const BenchGrid& grid,
                                    const Lexicon& lexicon, const BenchConfig& config);

// Columns: mode, n_s, n_p, method, mean_gamma, std_gamma, n_docs.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace topicweave
