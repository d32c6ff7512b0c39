#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fastgrpo/config.hpp"
#include "fastgrpo/image_complexity.hpp"
#include "fastgrpo/toy_policy.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo {

struct SyntheticBank {
  std::vector<Question> questions;
  std::vector<toy::SyntheticTask> tasks;  // parallel to questions
};

inline constexpr std::size_t kTextureSize = 64;

// Easy: constant; Medium: coarse stripes; Hard: uniform noise.
GrayImage tier_texture(Tier tier, std::uint64_t image_seed,
                       std::size_t size = kTextureSize);

// 3 * n_per_tier questions, tier-major order, image complexity cached.
SyntheticBank generate_question_bank(int n_per_tier, std::uint64_t seed);

// Default task per question from its tier. Throws if a question has no tier.
std::vector<toy::SyntheticTask> tasks_for(std::span<const Question> bank);

// Fills image_complexity where it is missing.
void score_images(std::span<Question> bank, const GlcmConfig& cfg = {},
                  const SemanticEntropyProvider& provider = HistogramSoftmaxProvider{});

struct MetricsRow {
  int step = 0;
  int epoch = 0;
  double mean_length = 0.0;
  std::array<double, kNumTiers> tier_length{};
  double accuracy = 0.0;
  std::array<double, kNumTiers> tier_accuracy{};
  double mean_reward = 0.0;
  double mean_beta = 0.0;
  double theta = 0.0;
  double clip_fraction = 0.0;
  double mean_kl = 0.0;
};

std::string metrics_header();
// Fixed column order, six decimals; tiers absent from the batch print "nan".
std::string format_metrics_row(const MetricsRow& row);

struct TrainSinks {
  std::ostream* metrics_csv = nullptr;  // header written by train()
  std::ostream* rollouts = nullptr;     // JSONL, one line per rollout
};

struct TrainResult {
  toy::ToyPolicy initial_policy;
  toy::ToyPolicy policy;
  std::vector<MetricsRow> metrics;
  std::size_t rollouts_logged = 0;
};

int steps_per_epoch(const TrainConfig& cfg, std::size_t bank_size);

// Each epoch: an unfiltered scoring pass, then steps_per_epoch FAST-GRPO
// steps. `bank` receives refreshed extrinsic difficulties. Throws
// CurriculumExhaustedError, or NumericalError naming the step.
TrainResult train(const TrainConfig& cfg, std::vector<Question>& bank,
                  std::span<const toy::SyntheticTask> tasks,
                  const TrainSinks& sinks = {});

struct TierReport {
  std::string name;  // easy, medium, hard, overall
  double accuracy = 0.0;
  double mean_length = 0.0;
  std::size_t rollouts = 0;

  bool operator==(const TierReport&) const = default;
};

// Rows: easy, medium, hard, overall. Frozen policy, G rollouts per question.
std::vector<TierReport> evaluate(const toy::ToyPolicy& policy,
                                 std::span<const Question> bank,
                                 std::span<const toy::SyntheticTask> tasks,
                                 int group_size, std::uint64_t seed, int l_max);

}  // namespace fastgrpo
