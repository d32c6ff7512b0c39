#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fastgrpo::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalAbort = 3,
  kCurriculumExhausted = 4,
};

struct TrainArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::vector<std::string> overrides;  // key=value
};

struct EvaluateArgs {
  std::string policy;
  std::string bank;
  int group_size = 32;
  std::uint64_t seed = 0;
  int l_max = 64;
};

struct GenBankArgs {
  int n = 100;
  std::uint64_t seed = 7;
  std::string out = "bank";
};

struct ScoreImageArgs {
  std::string path;
  int levels = 64;
  int patch = 64;
};

struct ShapeRewardArgs {
  std::string scheme = "fast";
  double length = 0.0;
  double batch_mean = 0.0;
  double max_length = 64.0;
  double s_d = 0.0;
  double theta = 0.0;
  bool correct = false;
  double group_min = 0.0;
  double group_max = 0.0;
  int group_correct = 0;
  int group_size = 8;
  double mean_correct_length = 0.0;
};

struct CompareRewardsArgs {
  ShapeRewardArgs context;
  double from = 0.0;
  double to = 64.0;
  double step = 1.0;
};

struct SampleCurriculumArgs {
  std::string strategy = "slow_to_fast_binary";
  int epoch = 1;
  int of = 10;
  std::string bank;
  int batch = 0;  // 0 prints the kept set instead of a sampled batch
  std::uint64_t seed = 0;
  double easy_cut = 0.25;
  double hard_cut = 0.75;
  double p_max = 0.4;
};

int run_train(const TrainArgs& args);
int run_evaluate(const EvaluateArgs& args);
int run_gen_bank(const GenBankArgs& args);
int run_score_image(const ScoreImageArgs& args);
int run_shape_reward(const ShapeRewardArgs& args);
int run_compare_rewards(const CompareRewardsArgs& args);
int run_sample_curriculum(const SampleCurriculumArgs& args);

}  // namespace fastgrpo::cli
