#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace fastgrpo {

enum class RewardScheme { kFast, kKimi, kCosFn, kDast, kPilotLengthy, kPilotShort, kNone };
enum class SamplerKind {
  kSlowToFastBinary,
  kSlowToFastContinuous,
  kFastToSlow,
  kDynamic,
  kNone
};
enum class DifficultyCombine { kMultiplicative, kWeightedSum };

std::string_view to_string(RewardScheme s);
std::string_view to_string(SamplerKind s);
std::string_view to_string(DifficultyCombine c);
RewardScheme parse_reward_scheme(std::string_view name);
SamplerKind parse_sampler(std::string_view name);
DifficultyCombine parse_difficulty_combine(std::string_view name);

// Every hyperparameter of a training run. Defaults are the desk-scale toy
// preset; full_scale() returns the full-size values.
struct TrainConfig {
  int group_size = 8;
  int epochs = 10;
  int batch_size = 32;
  // 0 derives bank_size / batch_size (at least 1).
  int steps_per_epoch = 0;
  double clip_eps = 0.2;
  double beta_min = 0.001;
  double beta_max = 0.03;
  double lambda_f = 0.5;
  double lambda_t = 0.5;
  double difficulty_percentile = 0.80;
  double easy_cut = 0.25;
  double hard_cut = 0.75;
  double p_max = 0.4;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
  RewardScheme reward_scheme = RewardScheme::kFast;
  SamplerKind sampler = SamplerKind::kSlowToFastBinary;
  DifficultyCombine difficulty_combine = DifficultyCombine::kMultiplicative;
  double alpha = 0.5;

  // Synthetic task and toy policy.
  int n_per_tier = 100;
  int l_max = 64;
  double init_continue_logit = 2.5;
  double init_care_logit = 24.0;
  int eval_group_size = 32;
  // Optional path to a bank.jsonl; empty generates a synthetic bank.
  std::string bank;

  static TrainConfig full_scale();

  // Throws ConfigError on a violated invariant.
  void validate() const;

  // Applies one `key = value` pair. Unknown keys throw ConfigError.
  void set(std::string_view key, std::string_view value);

  std::map<std::string, std::string> to_map() const;
};

// INI-style file: optional [section] headers, `key = value` lines,
// '#' or ';' comments. Section names are ignored; keys are TrainConfig fields.
TrainConfig load_config(const std::filesystem::path& path);
TrainConfig load_config(const std::filesystem::path& path, TrainConfig base);
void save_config(const std::filesystem::path& path, const TrainConfig& cfg);

}  // namespace fastgrpo
