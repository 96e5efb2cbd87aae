#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "topicweave/errors.hpp"
#include "topicweave/eval.hpp"

namespace topicweave {
namespace {

using Labels = std::vector<int>;

// Applies every bijection of the joint label alphabet to the prediction and
// counts element-wise matches.
int relabeling_oracle(const Labels& gold, const Labels& predicted) {
  std::set<int> alphabet(gold.begin(), gold.end());
  alphabet.insert(predicted.begin(), predicted.end());
  const Labels values(alphabet.begin(), alphabet.end());
  Labels image = values;
  int best = 0;
  do {
    int hits = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const auto at = std::lower_bound(values.begin(), values.end(), predicted[i]) - values.begin();
      hits += image[at] == gold[i];
    }
    best = std::max(best, hits);
  } while (std::next_permutation(image.begin(), image.end()));
  return best;
}

Labels random_labels(std::mt19937_64& rng, std::size_t n, int n_s) {
  Labels out(n);
  for (auto& l : out) l = std::uniform_int_distribution<int>(1, n_s)(rng);
  return out;
}

TEST(Accuracy, WorkedExamples) {
  EXPECT_EQ(accuracy({1, 1, 2, 2}, {2, 2, 1, 1}).gamma_count, 4);
  EXPECT_DOUBLE_EQ(accuracy({1, 1, 2, 2}, {2, 2, 1, 1}).gamma_fraction, 1.0);
  EXPECT_EQ(accuracy({1, 2, 1, 2}, {1, 1, 1, 1}).gamma_count, 2);
  EXPECT_EQ(accuracy({1, 2, 3, 1, 2, 3}, {1, 2, 3, 1, 2, 3}).gamma_count, 6);
  EXPECT_EQ(accuracy({1, 1, 2, 2, 3, 3}, {0, 0, 5, 5, 5, 9}).gamma_count, 5);
  EXPECT_EQ(accuracy({}, {}).gamma_count, 0);
}

TEST(Accuracy, MatchesRelabelingOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_s = std::uniform_int_distribution<int>(1, 5)(rng);
    const auto n = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
    auto gold = random_labels(rng, n, n_s);
    auto pred = random_labels(rng, n, std::uniform_int_distribution<int>(1, 5)(rng));
    ASSERT_EQ(accuracy(gold, pred).gamma_count, relabeling_oracle(gold, pred));
  }
}

TEST(Accuracy, InvariantUnderEveryPermutationForSmallAlphabets) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_s = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto n = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
    const auto gold = random_labels(rng, n, n_s);
    const auto pred = random_labels(rng, n, n_s);
    const int base = accuracy(gold, pred).gamma_count;
    Labels perm(n_s);
    for (int i = 0; i < n_s; ++i) perm[i] = i + 1;
    do {
      Labels g2 = gold, p2 = pred;
      for (auto& l : p2) l = perm[l - 1];
      ASSERT_EQ(accuracy(gold, p2).gamma_count, base);
      for (auto& l : g2) l = perm[l - 1];
      ASSERT_EQ(accuracy(g2, pred).gamma_count, base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Accuracy, ConstantPredictionMeetsPigeonholeBound) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const int n_s = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    const auto gold = random_labels(rng, n, n_s);
    const int bound = static_cast<int>((n + n_s - 1) / n_s);
    EXPECT_GE(accuracy(gold, Labels(n, 1)).gamma_count, bound);
  }
}

TEST(Accuracy, GuardsAndLengthMismatch) {
  Labels eleven(11), ten(11, 0);
  for (int i = 0; i < 11; ++i) eleven[i] = i;
  for (int i = 0; i < 10; ++i) ten[i] = i;
  EXPECT_THROW(accuracy(eleven, eleven), TooManyLabels);
  EXPECT_NO_THROW(accuracy(ten, ten));
  EXPECT_THROW(accuracy({1, 2}, {1}), std::invalid_argument);
}

}  // namespace
}  // namespace topicweave
