#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topicweave/text.hpp"

namespace topicweave {

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;

// Paragraph term-frequency vectors over the document vocabulary (lemmas in
// order of first appearance), each row scaled to unit L2 norm.
struct BowMatrix {
  std::vector<std::string> vocabulary;
  Matrix rows;
  std::vector<bool> empty;  // paragraphs without tokens: zero rows
};

BowMatrix bow_vectors(const AnnotatedDocument& doc);

struct KMeansOptions {
  int restarts = 25;
  int max_iterations = 300;
};

struct KMeansResult {
  std::vector<int> labels;
  Matrix centroids;
  double wcss = 0.0;
  std::vector<double> wcss_history;  // per Lloyd iteration of the winning restart
};

// Lloyd iterations from k-means++ seeds; the restart with the lowest
// within-cluster sum of squares wins. Throws DegenerateData when X has fewer
// distinct rows than k.
KMeansResult kmeans_cluster(const Matrix& x, int k, std::uint64_t seed,
                            const KMeansOptions& options = {});

struct EmOptions {
  double variance_floor = 1e-6;
  double tolerance = 1e-8;
  int max_iterations = 500;
  KMeansOptions init;
};

struct EmResult {
  std::vector<int> labels;
  std::vector<double> log_likelihood;  // one value per E-step
  Matrix means;
  Matrix variances;
  Vector weights;
};

// Diagonal-covariance Gaussian mixture fitted by EM from a k-means start;
// labels are the components with the largest responsibility.
EmResult em_cluster(const Matrix& x, int k, std::uint64_t seed, const EmOptions& options = {});

}  // namespace topicweave
