#include "topicweave/eval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "topicweave/errors.hpp"

namespace topicweave {

namespace {

std::vector<int> densify(const std::vector<int>& labels, int& alphabet) {
  std::map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(ids.try_emplace(l, static_cast<int>(ids.size())).first->second);
  alphabet = static_cast<int>(ids.size());
  return out;
}

}  // namespace

Accuracy accuracy(const std::vector<int>& gold, const std::vector<int>& predicted) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("gold and predicted label sequences differ in length");
  if (gold.empty()) return {};

  int n_gold = 0, n_pred = 0;
  const auto g = densify(gold, n_gold);
  const auto p = densify(predicted, n_pred);
  const int k = std::max(n_gold, n_pred);
  if (k > kMaxPermutationLabels)
    throw TooManyLabels(std::to_string(k) + " labels exceed the permutation guard of " +
                        std::to_string(kMaxPermutationLabels));

  // agree[a][b]: positions where predicted label a meets gold label b.
  std::vector<std::vector<int>> agree(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < g.size(); ++i) ++agree[p[i]][g[i]];

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int hits = 0;
    for (int a = 0; a < k; ++a) hits += agree[a][perm[a]];
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));

  return {best, static_cast<double>(best) / static_cast<double>(gold.size())};
}

}  // namespace topicweave
