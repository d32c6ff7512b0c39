#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fastgrpo/random.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo::toy {

// Vocabulary of the toy policy. A response is L THINK tokens, one STOP, one
// ANSWER token.
inline constexpr TokenId kThink = 0;
inline constexpr TokenId kStop = 1;
inline constexpr TokenId kAnswerCorrect = 2;
inline constexpr TokenId kAnswerWrong = 3;

struct TierParams {
  // Continue probability p = sigmoid(continue_logit).
  double continue_logit = 0.0;
  // Effort: correctness is evaluated at L + softplus(care_logit).
  double care_logit = 0.0;

  bool operator==(const TierParams&) const = default;
};

inline constexpr std::size_t kParamsPerTier = 2;
inline constexpr std::size_t kNumParams = kParamsPerTier * kNumTiers;

// Per-tier parameters; the question's tier selects which pair is used.
class ToyPolicy {
 public:
  ToyPolicy() = default;
  ToyPolicy(double continue_logit, double care_logit);

  const TierParams& at(Tier t) const { return tiers_[static_cast<std::size_t>(t)]; }
  TierParams& at(Tier t) { return tiers_[static_cast<std::size_t>(t)]; }

  // [easy.continue, easy.care, medium.continue, ..., hard.care]
  std::vector<double> flat() const;
  void set_flat(std::span<const double> theta);

  std::map<std::string, double> to_map() const;
  static ToyPolicy from_map(const std::map<std::string, double>& values);

  void save(const std::filesystem::path& path) const;
  static ToyPolicy load(const std::filesystem::path& path);

  bool operator==(const ToyPolicy&) const = default;

 private:
  std::array<TierParams, kNumTiers> tiers_{};
};

struct SyntheticTask {
  Tier tier = Tier::kMedium;
  double q_min = 0.0;
  double q_max = 1.0;
  double l_star = 1.0;
  std::uint64_t image_seed = 0;

  static SyntheticTask defaults(Tier tier, std::uint64_t image_seed = 0);
  void validate() const;
};

double sigmoid(double x);
double softplus(double x);

double continue_probability(const TierParams& p);
double care_bonus(const TierParams& p);

// q(L) = q_min + (q_max - q_min) * (1 - exp(-L / L_star)).
double competence(double length, const SyntheticTask& task);

// Mean THINK count of the capped geometric length distribution.
double expected_think_length(double p, int l_max);

std::size_t think_length(const Rollout& rollout);

// Per-token log-probabilities of `tokens` under `policy`. The STOP after
// l_max THINK tokens is forced and has log-probability 0.
std::vector<double> token_logprobs(const ToyPolicy& policy, const SyntheticTask& task,
                                   std::span<const TokenId> tokens, int l_max);

// Row-major tokens x kNumParams Jacobian of token_logprobs.
std::vector<double> token_logprob_grads(const ToyPolicy& policy,
                                        const SyntheticTask& task,
                                        std::span<const TokenId> tokens, int l_max);

// log pi(o | q) = L ln p + ln(1-p) + ln(q or 1-q).
double rollout_logprob(const ToyPolicy& policy, const Rollout& rollout,
                       const SyntheticTask& task, int l_max);

// Gradient of rollout_logprob w.r.t. (continue_logit, care_logit) of the
// task's tier.
std::array<double, kParamsPerTier> rollout_grad(const ToyPolicy& policy,
                                                const Rollout& rollout,
                                                const SyntheticTask& task,
                                                int l_max);

// Samples a response under `policy`. logp_new and logp_old are both the
// sampling policy's; logp_ref comes from `reference` (or `policy`).
Rollout sample_response(const ToyPolicy& policy, const SyntheticTask& task,
                        Rng& rng, int l_max,
                        const ToyPolicy* reference = nullptr);

// Builds a rollout from a fixed outcome; used by tests and the gradient check.
Rollout make_rollout(const ToyPolicy& policy, const SyntheticTask& task,
                     std::size_t think_tokens, bool correct, int l_max);

// Adapter exposing a policy over a batch of groups (one task per group) to
// the GRPO update step.
class ToyBatchPolicy {
 public:
  ToyBatchPolicy(ToyPolicy& policy, std::vector<SyntheticTask> group_tasks,
                 int l_max)
      : policy_(&policy), tasks_(std::move(group_tasks)), l_max_(l_max) {}

  std::vector<double> parameters() const { return policy_->flat(); }
  void set_parameters(std::span<const double> theta) { policy_->set_flat(theta); }

  std::vector<double> token_logprobs(std::size_t g, const Rollout& r) const {
    return toy::token_logprobs(*policy_, tasks_.at(g), r.tokens, l_max_);
  }
  std::vector<double> token_logprob_grads(std::size_t g, const Rollout& r) const {
    return toy::token_logprob_grads(*policy_, tasks_.at(g), r.tokens, l_max_);
  }

 private:
  ToyPolicy* policy_;
  std::vector<SyntheticTask> tasks_;
  int l_max_;
};

}  // namespace fastgrpo::toy
