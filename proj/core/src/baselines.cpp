#include "topicweave/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>

#include "topicweave/errors.hpp"

namespace topicweave {

namespace {

double squared_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void check_input(const Matrix& x, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<std::size_t>(k) > x.size())
    throw std::invalid_argument("k exceeds the number of rows");
  for (const auto& row : x)
    if (row.size() != x.front().size()) throw std::invalid_argument("ragged matrix");
  std::set<Vector> distinct(x.begin(), x.end());
  if (distinct.size() < static_cast<std::size_t>(k))
    throw DegenerateData(std::to_string(distinct.size()) + " distinct rows cannot form " +
                         std::to_string(k) + " clusters");
}

// Nearest centroid; smaller index on ties.
int nearest(const Vector& row, const Matrix& centroids, double* dist = nullptr) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(row, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

Matrix plus_plus_seeds(const Matrix& x, int k, std::mt19937_64& rng) {
  Matrix centroids;
  std::uniform_int_distribution<std::size_t> first(0, x.size() - 1);
  centroids.push_back(x[first(rng)]);
  std::vector<double> d2(x.size());
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nearest(x[i], centroids, &d2[i]);
      total += d2[i];
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double target = u(rng);
    std::size_t pick = 0;
    for (; pick + 1 < x.size(); ++pick) {
      if (d2[pick] > 0.0 && target < d2[pick]) break;
      target -= d2[pick];
    }
    // Guard against landing on an already chosen point through rounding.
    while (d2[pick] == 0.0) pick = (pick + 1) % x.size();
    centroids.push_back(x[pick]);
  }
  return centroids;
}

KMeansResult lloyd(const Matrix& x, Matrix centroids, int max_iterations) {
  KMeansResult r;
  r.labels.assign(x.size(), -1);
  const std::size_t dims = x.front().size();
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    double wcss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = 0.0;
      const int c = nearest(x[i], centroids, &d);
      wcss += d;
      if (c != r.labels[i]) {
        r.labels[i] = c;
        changed = true;
      }
    }
    r.wcss_history.push_back(wcss);
    r.wcss = wcss;
    if (!changed) break;

    Matrix sums(centroids.size(), Vector(dims, 0.0));
    std::vector<int> counts(centroids.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto& s = sums[r.labels[i]];
      for (std::size_t f = 0; f < dims; ++f) s[f] += x[i][f];
      ++counts[r.labels[i]];
    }
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t f = 0; f < dims; ++f) centroids[c][f] = sums[c][f] / counts[c];
    }
  }
  r.centroids = std::move(centroids);
  return r;
}

double log_sum_exp(const Vector& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

BowMatrix bow_vectors(const AnnotatedDocument& doc) {
  BowMatrix bow;
  std::unordered_map<std::string, std::size_t> column;
  for (const auto& para : doc.paragraphs)
    for (const auto& tok : para)
      if (column.try_emplace(tok.lemma, bow.vocabulary.size()).second)
        bow.vocabulary.push_back(tok.lemma);

  for (const auto& para : doc.paragraphs) {
    Vector row(bow.vocabulary.size(), 0.0);
    for (const auto& tok : para) row[column.at(tok.lemma)] += 1.0;
    double norm = 0.0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (double& v : row) v /= norm;
    bow.empty.push_back(para.empty());
    bow.rows.push_back(std::move(row));
  }
  return bow;
}

KMeansResult kmeans_cluster(const Matrix& x, int k, std::uint64_t seed,
                            const KMeansOptions& options) {
  check_input(x, k);
  std::mt19937_64 rng(seed);
  KMeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    auto run = lloyd(x, plus_plus_seeds(x, k, rng), options.max_iterations);
    if (run.wcss < best.wcss) best = std::move(run);
  }
  return best;
}

EmResult em_cluster(const Matrix& x, int k, std::uint64_t seed, const EmOptions& options) {
  const auto init = kmeans_cluster(x, k, seed, options.init);
  const std::size_t n = x.size();
  const std::size_t dims = x.front().size();
  const double log_two_pi = std::log(2.0 * std::numbers::pi);

  EmResult r;
  r.means = init.centroids;
  r.variances.assign(k, Vector(dims, 1.0));
  r.weights.assign(k, 0.0);
  {
    std::vector<int> counts(k, 0);
    Matrix sq(k, Vector(dims, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const int c = init.labels[i];
      ++counts[c];
      for (std::size_t f = 0; f < dims; ++f) {
        const double d = x[i][f] - r.means[c][f];
        sq[c][f] += d * d;
      }
    }
    for (int c = 0; c < k; ++c) {
      r.weights[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
      for (std::size_t f = 0; f < dims; ++f)
        r.variances[c][f] = std::max(counts[c] > 0 ? sq[c][f] / counts[c] : 1.0,
                                     options.variance_floor);
    }
  }

  Matrix resp(n, Vector(k, 0.0));
  for (int it = 0; it < options.max_iterations; ++it) {
    // E-step.
    std::vector<double> log_weight(k);
    std::vector<double> log_norm(k, 0.0);
    for (int c = 0; c < k; ++c) {
      log_weight[c] = r.weights[c] > 0.0 ? std::log(r.weights[c])
                                         : -std::numeric_limits<double>::infinity();
      for (std::size_t f = 0; f < dims; ++f)
        log_norm[c] += -0.5 * (log_two_pi + std::log(r.variances[c][f]));
    }
    double ll = 0.0;
    Vector log_p(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < k; ++c) {
        double quad = 0.0;
        for (std::size_t f = 0; f < dims; ++f) {
          const double d = x[i][f] - r.means[c][f];
          quad += d * d / r.variances[c][f];
        }
        log_p[c] = log_weight[c] + log_norm[c] - 0.5 * quad;
      }
      const double lse = log_sum_exp(log_p);
      ll += lse;
      for (int c = 0; c < k; ++c) resp[i][c] = std::exp(log_p[c] - lse);
    }
    const bool converged =
        !r.log_likelihood.empty() && ll - r.log_likelihood.back() < options.tolerance;
    r.log_likelihood.push_back(ll);
    if (converged) break;

    // M-step.
    for (int c = 0; c < k; ++c) {
      double mass = 0.0;
      for (std::size_t i = 0; i < n; ++i) mass += resp[i][c];
      r.weights[c] = mass / static_cast<double>(n);
      if (mass <= std::numeric_limits<double>::min()) continue;  // dead component
      Vector mean(dims, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < dims; ++f) mean[f] += resp[i][c] * x[i][f];
      for (double& m : mean) m /= mass;
      Vector var(dims, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < dims; ++f) {
          const double d = x[i][f] - mean[f];
          var[f] += resp[i][c] * d * d;
        }
      for (double& v : var) v = std::max(v / mass, options.variance_floor);
      r.means[c] = std::move(mean);
      r.variances[c] = std::move(var);
    }
  }

  r.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    r.labels[i] = static_cast<int>(std::max_element(resp[i].begin(), resp[i].end()) -
                                   resp[i].begin());
  return r;
}

}  // namespace topicweave
