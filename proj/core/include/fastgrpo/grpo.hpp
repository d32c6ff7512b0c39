#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "fastgrpo/error.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo {

inline constexpr double kAdvantageEpsilon = 1e-6;

struct StepDiagnostics {
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
  double mean_kl = 0.0;
  double mean_beta = 0.0;
  double mean_gc = 0.0;
  double surrogate_loss = 0.0;
};

// (r - mean) / (population std + 1e-6). All-equal rewards give all zeros.
std::vector<double> group_advantages(std::span<const double> rewards);

// beta_min + (beta_max - beta_min) * (1 - s_ext).
double adaptive_beta(double s_ext, double beta_min, double beta_max);

// k3 estimator r - ln r - 1 with r = pi_ref / pi_theta, from log-probs.
double kl_value(double logp_new, double logp_ref);

double clipped_surrogate_term(double ratio, double advantage, double eps);

// A + beta * (pi_ref/pi_theta - 1): the per-token coefficient multiplying
// grad log pi_theta in the objective gradient at ratio 1.
double gradient_coefficient(double advantage, double beta, double ratio_ref);

struct ObjectiveResult {
  double objective = 0.0;
  double loss = 0.0;  // -objective
  // d objective / d logp_new for every token, indexed [group][rollout][token].
  std::vector<std::vector<std::vector<double>>> token_weights;
  StepDiagnostics diagnostics;
};

// Mean over groups of (1/G) sum_i (1/|o_i|) sum_t [clip term - beta_g * kl_t].
// Reads logp_new/logp_old/logp_ref and advantages from the groups.
ObjectiveResult grpo_objective(std::span<const RolloutGroup> groups,
                               std::span<const double> betas, double eps);

// A policy the update step can differentiate. Group index `g` lets the policy
// look up whatever conditions the rollout (the question).
template <typename P>
concept DifferentiablePolicy = requires(P& p, const P& cp, std::size_t g,
                                        const Rollout& r,
                                        std::span<const double> theta) {
  { cp.parameters() } -> std::convertible_to<std::vector<double>>;
  { p.set_parameters(theta) };
  { cp.token_logprobs(g, r) } -> std::convertible_to<std::vector<double>>;
  // Row-major tokens x parameters.
  { cp.token_logprob_grads(g, r) } -> std::convertible_to<std::vector<double>>;
};

// Gradient of the objective w.r.t. the policy parameters by the chain rule
// through token_weights.
template <DifferentiablePolicy P>
std::vector<double> objective_gradient(const P& policy,
                                       std::span<const RolloutGroup> groups,
                                       const ObjectiveResult& result) {
  const auto n = policy.parameters().size();
  std::vector<double> grad(n, 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i = 0; i < groups[g].rollouts.size(); ++i) {
      const auto& weights = result.token_weights[g][i];
      const auto jac = policy.token_logprob_grads(g, groups[g].rollouts[i]);
      for (std::size_t t = 0; t < weights.size(); ++t) {
        if (weights[t] == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) grad[k] += weights[t] * jac[t * n + k];
      }
    }
  }
  return grad;
}

// Recomputes logp_new of every rollout under the policy's current parameters.
template <DifferentiablePolicy P>
void refresh_logp_new(const P& policy, std::span<RolloutGroup> groups) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto& r : groups[g].rollouts) r.logp_new = policy.token_logprobs(g, r);
  }
}

// One plain gradient-ascent step on the objective. Diagnostics describe the
// objective at the pre-update parameters. A non-finite objective or gradient
// throws NumericalError and leaves the policy untouched.
template <DifferentiablePolicy P>
StepDiagnostics policy_update_step(P& policy, std::span<const RolloutGroup> groups,
                                   std::span<const double> betas, double eps,
                                   double learning_rate) {
  const auto result = grpo_objective(groups, betas, eps);
  if (!std::isfinite(result.objective)) {
    throw NumericalError("non-finite objective");
  }
  const auto grad = objective_gradient(policy, groups, result);
  auto theta = policy.parameters();
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (!std::isfinite(grad[k])) {
      throw NumericalError("non-finite gradient in parameter " + std::to_string(k));
    }
    theta[k] += learning_rate * grad[k];
  }
  policy.set_parameters(theta);
  return result.diagnostics;
}

}  // namespace fastgrpo
