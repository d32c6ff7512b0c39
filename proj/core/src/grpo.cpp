#include "fastgrpo/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fastgrpo {

std::vector<double> group_advantages(std::span<const double> rewards) {
  const auto g = rewards.size();
  if (g < 2) throw ArgumentError("group_advantages needs at least 2 rewards");
  const double n = static_cast<double>(g);
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double std_dev = std::sqrt(var / n);

  std::vector<double> adv(g, 0.0);
  const bool degenerate = std::all_of(rewards.begin(), rewards.end(),
                                      [&](double r) { return r == rewards[0]; });
  if (degenerate) return adv;
  for (std::size_t i = 0; i < g; ++i) {
    adv[i] = (rewards[i] - mean) / (std_dev + kAdvantageEpsilon);
  }
  return adv;
}

double adaptive_beta(double s_ext, double beta_min, double beta_max) {
  if (!(s_ext >= 0.0 && s_ext <= 1.0)) {
    throw ArgumentError("extrinsic difficulty must lie in [0,1]");
  }
  if (!(beta_min > 0.0 && beta_min <= beta_max)) {
    throw ArgumentError("need 0 < beta_min <= beta_max");
  }
  // lerp is exact at both ends and monotone in s_ext.
  return std::lerp(beta_max, beta_min, s_ext);
}

double kl_value(double logp_new, double logp_ref) {
  const double log_ratio = logp_ref - logp_new;
  return std::exp(log_ratio) - log_ratio - 1.0;
}

double clipped_surrogate_term(double ratio, double advantage, double eps) {
  if (!(ratio > 0.0)) throw ArgumentError("probability ratio must be positive");
  const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
  return std::min(ratio * advantage, clipped * advantage);
}

double gradient_coefficient(double advantage, double beta, double ratio_ref) {
  return advantage + beta * (ratio_ref - 1.0);
}

ObjectiveResult grpo_objective(std::span<const RolloutGroup> groups,
                               std::span<const double> betas, double eps) {
  if (groups.empty()) throw ArgumentError("grpo_objective: no groups");
  if (betas.size() != groups.size()) {
    throw ArgumentError("grpo_objective: one beta per group required");
  }

  ObjectiveResult res;
  res.token_weights.resize(groups.size());
  auto& diag = res.diagnostics;

  const double group_scale = 1.0 / static_cast<double>(groups.size());
  double objective = 0.0;
  double surrogate = 0.0;
  double ratio_sum = 0.0;
  double kl_sum = 0.0;
  double gc_sum = 0.0;
  double beta_sum = 0.0;
  std::size_t clipped_tokens = 0;
  std::size_t tokens = 0;

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    if (group.rollouts.empty()) {
      throw ArgumentError("grpo_objective: empty group '" + group.question_id + "'");
    }
    if (group.advantages.size() != group.rollouts.size()) {
      throw ArgumentError("grpo_objective: advantages not populated for '" +
                          group.question_id + "'");
    }
    const double beta = betas[g];
    beta_sum += beta;
    const double rollout_scale =
        group_scale / static_cast<double>(group.rollouts.size());
    res.token_weights[g].resize(group.rollouts.size());

    double group_objective = 0.0;
    double group_surrogate = 0.0;
    for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
      const auto& o = group.rollouts[i];
      const double adv = group.advantages[i];
      auto& weights = res.token_weights[g][i];
      weights.assign(o.tokens.size(), 0.0);
      if (o.tokens.empty()) continue;
      const double token_scale = 1.0 / static_cast<double>(o.tokens.size());

      double rollout_objective = 0.0;
      double rollout_surrogate = 0.0;
      for (std::size_t t = 0; t < o.tokens.size(); ++t) {
        const double ratio = std::exp(o.logp_new[t] - o.logp_old[t]);
        const double ratio_ref = std::exp(o.logp_ref[t] - o.logp_new[t]);
        const double unclipped = ratio * adv;
        const double term = clipped_surrogate_term(ratio, adv, eps);
        const double kl = kl_value(o.logp_new[t], o.logp_ref[t]);
        rollout_objective += term - beta * kl;
        rollout_surrogate += term;

        // d term / d logp_new is ratio * A on the unclipped branch and 0 when
        // the clipped constant is selected; d(-beta kl)/d logp_new is
        // beta * (ratio_ref - 1).
        const bool clipped = term < unclipped;
        const double d_term = clipped ? 0.0 : unclipped;
        weights[t] = rollout_scale * token_scale *
                     (d_term + beta * (ratio_ref - 1.0));

        ratio_sum += ratio;
        kl_sum += kl;
        gc_sum += gradient_coefficient(adv, beta, ratio_ref);
        clipped_tokens += clipped ? 1 : 0;
        ++tokens;
      }
      group_objective += token_scale * rollout_objective;
      group_surrogate += token_scale * rollout_surrogate;
    }
    objective += rollout_scale * group_objective;
    surrogate += rollout_scale * group_surrogate;
  }

  res.objective = objective;
  res.loss = -objective;
  const double nt = tokens > 0 ? static_cast<double>(tokens) : 1.0;
  diag.mean_ratio = ratio_sum / nt;
  diag.clip_fraction = static_cast<double>(clipped_tokens) / nt;
  diag.mean_kl = kl_sum / nt;
  diag.mean_gc = gc_sum / nt;
  diag.mean_beta = beta_sum / static_cast<double>(groups.size());
  diag.surrogate_loss = -surrogate;
  return res;
}

}  // namespace fastgrpo
