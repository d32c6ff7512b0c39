#pragma once

#include <span>

#include "fastgrpo/config.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo {

struct DifficultyScore {
  double s_extrinsic = 0.0;
  double h_image = 0.0;
  double s_difficulty = 0.0;
  Tier tier = Tier::kMedium;
};

// 1 - c/k.
double extrinsic_difficulty(int correct, int rollouts);

// Multiplicative: s_ext * h_img. Weighted sum: alpha * s_ext + (1-alpha) * h_img.
double combined_difficulty(double s_ext, double h_img, DifficultyCombine mode,
                           double alpha = 0.5);

// Easy iff pass@k >= easy_pass; Hard iff pass@k <= hard_pass; both inclusive.
Tier difficulty_tier(double pass_at_k, double easy_pass = 0.75,
                     double hard_pass = 0.25);

DifficultyScore score_difficulty(int correct, int rollouts, double h_img,
                                 DifficultyCombine mode, double alpha = 0.5);

// Nearest-rank percentile: sorted[ceil(percentile * n) - 1].
double batch_threshold(std::span<const double> scores, double percentile);

}  // namespace fastgrpo
