#include "fastgrpo/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

namespace {

std::size_t count_occurrences(std::string_view text, std::string_view tag) {
  std::size_t n = 0;
  for (auto pos = text.find(tag); pos != std::string_view::npos;
       pos = text.find(tag, pos + tag.size())) {
    ++n;
  }
  return n;
}

}  // namespace

double accuracy_reward(bool correct) { return correct ? 1.0 : 0.0; }
double accuracy_reward(const Rollout& rollout) {
  return accuracy_reward(rollout.correct);
}

double format_reward(std::string_view text) {
  constexpr std::string_view kTags[] = {"<think>", "</think>", "<answer>",
                                        "</answer>"};
  std::size_t last = 0;
  for (const auto tag : kTags) {
    if (count_occurrences(text, tag) != 1) return 0.0;
    const auto pos = text.find(tag);
    if (pos < last) return 0.0;
    last = pos + tag.size();
  }
  return 1.0;
}

double fast_length_reward(const LengthContext& ctx, double s_d, double theta,
                          double r_a) {
  if (!(ctx.batch_mean > 0.0)) {
    throw ArgumentError("batch mean length must be positive");
  }
  const double ratio = ctx.length / ctx.batch_mean;
  if (s_d < theta && r_a == 1.0) return std::max(1.0 - ratio, -1.0);
  if (s_d >= theta && r_a == 0.0) return std::min(ratio - 1.0, 1.0);
  return 0.0;
}

double kimi_length_penalty(const LengthContext& ctx, bool correct) {
  const double span = ctx.group_max - ctx.group_min;
  if (span == 0.0) return 0.0;
  const double base = 0.5 - (ctx.length - ctx.group_min) / span;
  return correct ? base : std::min(0.0, base);
}

double cosine_length_reward(const LengthContext& ctx, bool correct,
                            CosineEndpoints correct_ends,
                            CosineEndpoints wrong_ends) {
  const double t = ctx.length;
  const double horizon = ctx.max_length;
  if (!(horizon > 0.0)) throw ArgumentError("max length must be positive");
  if (t < 0.0 || t > horizon) {
    throw ArgumentError("generation length " + std::to_string(t) +
                        " outside [0, " + std::to_string(horizon) + "]");
  }
  const auto ends = correct ? correct_ends : wrong_ends;
  const double eta_max = ends.at_zero;
  const double eta_min = ends.at_max;
  return eta_min + 0.5 * (eta_max - eta_min) *
                       (1.0 + std::cos(t * std::numbers::pi / horizon));
}

double dast_budget(const LengthContext& ctx) {
  if (ctx.group_size <= 0 || ctx.group_correct <= 0) return ctx.max_length;
  const double p = static_cast<double>(ctx.group_correct) / ctx.group_size;
  return p * ctx.mean_correct_length + (1.0 - p) * ctx.max_length;
}

double dast_length_reward(const LengthContext& ctx, bool correct) {
  const double budget = dast_budget(ctx);
  if (!(budget > 0.0)) throw ArgumentError("DAST length budget must be positive");
  const double lambda = (ctx.length - budget) / budget;
  return correct ? std::max(-0.5 * lambda + 0.5, 0.1)
                 : std::min(0.9 * lambda - 0.1, -0.1);
}

double pilot_length_reward(const LengthContext& ctx, bool correct,
                           PilotMode mode) {
  if (!correct) return 0.0;
  if (!(ctx.max_length > 0.0)) throw ArgumentError("max length must be positive");
  const double frac = ctx.length / ctx.max_length;
  return mode == PilotMode::kLengthy ? frac : 1.0 - frac;
}

double total_reward(double r_a, double r_f, double r_t, double lambda_f,
                    double lambda_t) {
  return r_a + lambda_f * r_f + lambda_t * r_t;
}

double length_reward(RewardScheme scheme, const LengthContext& ctx, double s_d,
                     double theta, bool correct) {
  switch (scheme) {
    case RewardScheme::kFast:
      return fast_length_reward(ctx, s_d, theta, accuracy_reward(correct));
    case RewardScheme::kKimi:
      return kimi_length_penalty(ctx, correct);
    case RewardScheme::kCosFn:
      return cosine_length_reward(ctx, correct);
    case RewardScheme::kDast:
      return dast_length_reward(ctx, correct);
    case RewardScheme::kPilotLengthy:
      return pilot_length_reward(ctx, correct, PilotMode::kLengthy);
    case RewardScheme::kPilotShort:
      return pilot_length_reward(ctx, correct, PilotMode::kShort);
    case RewardScheme::kNone:
      return 0.0;
  }
  return 0.0;
}

RewardBreakdown reward_breakdown(bool correct, bool format_ok, double r_t,
                                 double lambda_f, double lambda_t) {
  RewardBreakdown b;
  b.r_a = accuracy_reward(correct);
  b.r_f = format_ok ? 1.0 : 0.0;
  b.r_t = r_t;
  b.total = total_reward(b.r_a, b.r_f, b.r_t, lambda_f, lambda_t);
  return b;
}

}  // namespace fastgrpo
