#pragma once

#include <string_view>

#include "fastgrpo/config.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo {

// Everything a length reward may look at for one rollout.
struct LengthContext {
  double length = 0.0;       // L
  double batch_mean = 0.0;   // L_avg over the batch
  double max_length = 64.0;  // L_max, the generation cap
  double group_min = 0.0;    // shortest response in the group
  double group_max = 0.0;    // longest response in the group
  int group_correct = 0;     // c
  int group_size = 0;        // N
  double mean_correct_length = 0.0;  // mean length of correct responses; 0 if none
};

// (reward at t=0, reward at t=T) for one outcome of the cosine schedule.
struct CosineEndpoints {
  double at_zero;
  double at_max;
};

inline constexpr CosineEndpoints kCosineCorrect{1.0, 0.5};
inline constexpr CosineEndpoints kCosineWrong{-1.0, 0.0};

enum class PilotMode { kLengthy, kShort };

double accuracy_reward(const Rollout& rollout);
double accuracy_reward(bool correct);

// 1 iff `text` holds exactly one <think>...</think> pair followed by exactly
// one <answer>...</answer> pair.
double format_reward(std::string_view text);

// Difficulty-aware length reward in [-1, 1].
//   s_d <  theta, correct   -> max(1 - L/L_avg, -1)
//   s_d >= theta, incorrect -> min(L/L_avg - 1, 1)
//   otherwise               -> 0
double fast_length_reward(const LengthContext& ctx, double s_d, double theta,
                          double r_a);

double kimi_length_penalty(const LengthContext& ctx, bool correct);

double cosine_length_reward(const LengthContext& ctx, bool correct,
                            CosineEndpoints correct_ends = kCosineCorrect,
                            CosineEndpoints wrong_ends = kCosineWrong);

// p * mean_correct_length + (1 - p) * L_max with p = c / N.
double dast_budget(const LengthContext& ctx);
double dast_length_reward(const LengthContext& ctx, bool correct);

double pilot_length_reward(const LengthContext& ctx, bool correct,
                           PilotMode mode);

double total_reward(double r_a, double r_f, double r_t, double lambda_f,
                    double lambda_t);

// Dispatches on the configured scheme. kNone yields 0.
double length_reward(RewardScheme scheme, const LengthContext& ctx, double s_d,
                     double theta, bool correct);

RewardBreakdown reward_breakdown(bool correct, bool format_ok, double r_t,
                                 double lambda_f, double lambda_t);

}  // namespace fastgrpo
