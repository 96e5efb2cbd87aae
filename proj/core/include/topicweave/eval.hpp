#pragma once

#include <vector>

namespace topicweave {

inline constexpr int kMaxPermutationLabels = 10;

struct Accuracy {
  int gamma_count = 0;
  double gamma_fraction = 0.0;
};

// Best element-wise agreement between `gold` and `predicted` over every
// relabeling of the predicted alphabet. Labels are arbitrary integers; the
// combined alphabet size may not exceed kMaxPermutationLabels.
Accuracy accuracy(const std::vector<int>& gold, const std::vector<int>& predicted);

}  // namespace topicweave
