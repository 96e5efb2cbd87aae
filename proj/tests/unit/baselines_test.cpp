#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topicweave/baselines.hpp"
#include "topicweave/errors.hpp"
#include "topicweave/eval.hpp"

namespace topicweave {
namespace {

// Two Gaussian clouds, centered at 0 and at `gap` on every axis.
struct Clouds {
  Matrix x;
  std::vector<int> truth;
};

Clouds two_clouds(std::mt19937_64& rng, int per_cloud, int dim, double gap, double sd = 0.3) {
  std::normal_distribution<double> noise(0.0, sd);
  Clouds c;
  for (int cloud = 0; cloud < 2; ++cloud)
    for (int i = 0; i < per_cloud; ++i) {
      Vector row(dim);
      for (auto& v : row) v = cloud * gap + noise(rng);
      c.x.push_back(row);
      c.truth.push_back(cloud);
    }
  return c;
}

TEST(Bow, TermFrequenciesAreUnitNormalised) {
  auto bow = bow_vectors(testing::make_document({{"car", "car", "wheel"}, {}, {"wheel"}}));
  EXPECT_EQ(bow.vocabulary, (std::vector<std::string>{"car", "wheel"}));
  EXPECT_NEAR(bow.rows[0][0], 2 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(bow.rows[0][1], 1 / std::sqrt(5.0), 1e-15);
  EXPECT_EQ(bow.rows[1], (Vector{0, 0}));
  EXPECT_EQ(bow.empty, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(bow.rows[2], (Vector{0, 1}));
}

TEST(Bow, IdenticalParagraphsGiveIdenticalRows) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto doc = testing::random_document(rng, 4, 10, 6);
    doc.paragraphs.push_back(doc.paragraphs.front());
    auto bow = bow_vectors(doc);
    EXPECT_EQ(bow.rows.front(), bow.rows.back());
    for (std::size_t r = 0; r < bow.rows.size(); ++r) {
      double norm = 0;
      for (double v : bow.rows[r]) {
        EXPECT_GE(v, 0.0);
        norm += v * v;
      }
      EXPECT_NEAR(norm, bow.empty[r] ? 0.0 : 1.0, 1e-12);
    }
  }
}

TEST(KMeans, RecoversSeparatedClouds) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = two_clouds(rng, 15, 3, 5.0);
    auto r = kmeans_cluster(c.x, 2, 42 + trial);
    EXPECT_EQ(accuracy(c.truth, r.labels).gamma_count, 30);
  }
}

TEST(KMeans, SaturatesWhenEveryRowIsItsOwnCluster) {
  Matrix x{{0, 0}, {1, 0}, {0, 1}, {3, 3}};
  auto r = kmeans_cluster(x, 4, 1);
  EXPECT_EQ(r.wcss, 0.0);
  std::set<int> distinct(r.labels.begin(), r.labels.end());
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(KMeans, WcssNeverIncreasesAcrossIterations) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix x(40, Vector(4));
    for (auto& row : x)
      for (auto& v : row) v = std::uniform_real_distribution<double>(0, 1)(rng);
    auto r = kmeans_cluster(x, std::uniform_int_distribution<int>(1, 6)(rng), trial);
    ASSERT_FALSE(r.wcss_history.empty());
    for (std::size_t i = 1; i < r.wcss_history.size(); ++i)
      EXPECT_LE(r.wcss_history[i], r.wcss_history[i - 1] + 1e-12);
    EXPECT_NEAR(r.wcss, r.wcss_history.back(), 1e-12);
  }
}

TEST(KMeans, DuplicatedRowsKeepThePartition) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = two_clouds(rng, 6, 2, 4.0);
    auto base = kmeans_cluster(c.x, 2, 5);
    Matrix doubled = c.x;
    doubled.insert(doubled.end(), c.x.begin(), c.x.end());
    auto dup = kmeans_cluster(doubled, 2, 5);
    std::vector<int> first_half(dup.labels.begin(), dup.labels.begin() + c.x.size());
    std::vector<int> second_half(dup.labels.begin() + c.x.size(), dup.labels.end());
    EXPECT_EQ(first_half, second_half);
    EXPECT_EQ(accuracy(base.labels, first_half).gamma_count, static_cast<int>(c.x.size()));
  }
}

TEST(KMeans, DeterministicAndGuarded) {
  std::mt19937_64 rng(11);
  auto c = two_clouds(rng, 10, 3, 1.0, 1.0);
  EXPECT_EQ(kmeans_cluster(c.x, 3, 7).labels, kmeans_cluster(c.x, 3, 7).labels);
  EXPECT_THROW(kmeans_cluster({{1, 1}, {1, 1}, {2, 2}}, 3, 0), DegenerateData);
  EXPECT_THROW(kmeans_cluster({{1, 1}}, 2, 0), std::invalid_argument);
}

TEST(Em, RecoversSeparatedClouds) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = two_clouds(rng, 15, 3, 5.0);
    auto r = em_cluster(c.x, 2, 42 + trial);
    EXPECT_EQ(accuracy(c.truth, r.labels).gamma_count, 30);
  }
}

TEST(Em, LogLikelihoodNeverDecreases) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = two_clouds(rng, 12, 3, 1.5, 1.0);
    auto r = em_cluster(c.x, std::uniform_int_distribution<int>(1, 4)(rng), trial);
    ASSERT_FALSE(r.log_likelihood.empty());
    for (std::size_t i = 1; i < r.log_likelihood.size(); ++i)
      EXPECT_GE(r.log_likelihood[i], r.log_likelihood[i - 1] - 1e-9 * std::abs(r.log_likelihood[i]));
    double total = 0;
    for (double w : r.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (const auto& var : r.variances)
      for (double v : var) EXPECT_GE(v, 1e-6);
  }
}

TEST(Em, SingleComponentLabelsEverything) {
  std::mt19937_64 rng(14);
  auto c = two_clouds(rng, 5, 2, 3.0);
  EXPECT_EQ(em_cluster(c.x, 1, 0).labels, std::vector<int>(10, 0));
  EXPECT_EQ(kmeans_cluster(c.x, 1, 0).labels, std::vector<int>(10, 0));
}

}  // namespace
}  // namespace topicweave
