#include "fastgrpo/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

double extrinsic_difficulty(int correct, int rollouts) {
  if (rollouts < 1) throw ArgumentError("rollout count must be >= 1");
  if (correct < 0 || correct > rollouts) {
    throw ArgumentError("correct count " + std::to_string(correct) +
                        " outside [0, " + std::to_string(rollouts) + "]");
  }
  return 1.0 - static_cast<double>(correct) / static_cast<double>(rollouts);
}

double combined_difficulty(double s_ext, double h_img, DifficultyCombine mode,
                           double alpha) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(s_ext) || !in_unit(h_img)) {
    throw ArgumentError("difficulty inputs must lie in [0,1]");
  }
  switch (mode) {
    case DifficultyCombine::kMultiplicative:
      return s_ext * h_img;
    case DifficultyCombine::kWeightedSum:
      if (!in_unit(alpha)) throw ArgumentError("alpha must lie in [0,1]");
      return alpha * s_ext + (1.0 - alpha) * h_img;
  }
  throw ArgumentError("unknown difficulty combine mode");
}

Tier difficulty_tier(double pass_at_k, double easy_pass, double hard_pass) {
  if (pass_at_k >= easy_pass) return Tier::kEasy;
  if (pass_at_k <= hard_pass) return Tier::kHard;
  return Tier::kMedium;
}

DifficultyScore score_difficulty(int correct, int rollouts, double h_img,
                                 DifficultyCombine mode, double alpha) {
  DifficultyScore s;
  s.s_extrinsic = extrinsic_difficulty(correct, rollouts);
  s.h_image = h_img;
  s.s_difficulty = combined_difficulty(s.s_extrinsic, h_img, mode, alpha);
  s.tier = difficulty_tier(static_cast<double>(correct) / rollouts);
  return s;
}

double batch_threshold(std::span<const double> scores, double percentile) {
  if (scores.empty()) throw ArgumentError("batch_threshold of an empty batch");
  if (!(percentile > 0.0 && percentile <= 1.0)) {
    throw ArgumentError("percentile must lie in (0,1]");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  // Guard against 0.8 * 10 evaluating to 8.000000000000002.
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace fastgrpo
