#include "fastgrpo/toy_policy.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "fastgrpo/error.hpp"

namespace fastgrpo::toy {

namespace {

constexpr const char* kParamNames[kParamsPerTier] = {"continue_logit",
                                                     "care_logit"};

std::size_t tier_offset(Tier t) {
  return static_cast<std::size_t>(t) * kParamsPerTier;
}

struct AnswerTerms {
  double q;      // P(correct)
  double dq_db;  // d q / d (effective length)
};

AnswerTerms answer_terms(const SyntheticTask& task, double effective_length) {
  const double decay = std::exp(-effective_length / task.l_star);
  return {task.q_min + (task.q_max - task.q_min) * (1.0 - decay),
          (task.q_max - task.q_min) / task.l_star * decay};
}

void check_l_max(int l_max) {
  if (l_max < 0) throw ArgumentError("l_max must be >= 0");
}

}  // namespace

ToyPolicy::ToyPolicy(double continue_logit, double care_logit) {
  for (auto& t : tiers_) t = {continue_logit, care_logit};
}

std::vector<double> ToyPolicy::flat() const {
  std::vector<double> theta;
  theta.reserve(kNumParams);
  for (const auto& t : tiers_) {
    theta.push_back(t.continue_logit);
    theta.push_back(t.care_logit);
  }
  return theta;
}

void ToyPolicy::set_flat(std::span<const double> theta) {
  if (theta.size() != kNumParams) {
    throw ArgumentError("toy policy expects " + std::to_string(kNumParams) +
                        " parameters");
  }
  for (std::size_t i = 0; i < kNumTiers; ++i) {
    tiers_[i].continue_logit = theta[i * kParamsPerTier];
    tiers_[i].care_logit = theta[i * kParamsPerTier + 1];
  }
}

std::map<std::string, double> ToyPolicy::to_map() const {
  std::map<std::string, double> out;
  const auto theta = flat();
  for (auto tier : kAllTiers) {
    for (std::size_t k = 0; k < kParamsPerTier; ++k) {
      out[std::string(to_string(tier)) + "." + kParamNames[k]] =
          theta[tier_offset(tier) + k];
    }
  }
  return out;
}

ToyPolicy ToyPolicy::from_map(const std::map<std::string, double>& values) {
  std::vector<double> theta(kNumParams);
  for (auto tier : kAllTiers) {
    for (std::size_t k = 0; k < kParamsPerTier; ++k) {
      const auto key = std::string(to_string(tier)) + "." + kParamNames[k];
      const auto it = values.find(key);
      if (it == values.end()) throw ArgumentError("policy is missing '" + key + "'");
      theta[tier_offset(tier) + k] = it->second;
    }
  }
  if (values.size() != kNumParams) throw ArgumentError("policy has unknown keys");
  ToyPolicy p;
  p.set_flat(theta);
  return p;
}

void ToyPolicy::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << nlohmann::json(to_map()).dump(2) << '\n';
  if (!out) throw IoError(path.string(), "write failed");
}

ToyPolicy ToyPolicy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open policy");
  try {
    return from_map(nlohmann::json::parse(in).get<std::map<std::string, double>>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string(), e.what());
  }
}

SyntheticTask SyntheticTask::defaults(Tier tier, std::uint64_t image_seed) {
  switch (tier) {
    case Tier::kEasy:
      return {tier, 0.6, 0.9, 2.0, image_seed};
    case Tier::kMedium:
      return {tier, 0.3, 0.85, 6.0, image_seed};
    case Tier::kHard:
      return {tier, 0.05, 0.7, 16.0, image_seed};
  }
  throw ArgumentError("unknown tier");
}

void SyntheticTask::validate() const {
  if (!(0.0 <= q_min && q_min <= q_max && q_max <= 1.0)) {
    throw ArgumentError("need 0 <= q_min <= q_max <= 1");
  }
  if (!(l_star > 0.0)) throw ArgumentError("L_star must be positive");
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double continue_probability(const TierParams& p) { return sigmoid(p.continue_logit); }
double care_bonus(const TierParams& p) { return softplus(p.care_logit); }

double competence(double length, const SyntheticTask& task) {
  if (length < 0.0) throw ArgumentError("length must be >= 0");
  return answer_terms(task, length).q;
}

double expected_think_length(double p, int l_max) {
  check_l_max(l_max);
  if (p >= 1.0) return static_cast<double>(l_max);
  return p * (1.0 - std::pow(p, l_max)) / (1.0 - p);
}

std::size_t think_length(const Rollout& rollout) {
  std::size_t n = 0;
  for (auto t : rollout.tokens) n += (t == kThink) ? 1 : 0;
  return n;
}

std::vector<double> token_logprobs(const ToyPolicy& policy, const SyntheticTask& task,
                                   std::span<const TokenId> tokens, int l_max) {
  check_l_max(l_max);
  const auto& params = policy.at(task.tier);
  const double log_p = -softplus(-params.continue_logit);   // ln sigmoid(x)
  const double log_1mp = -softplus(params.continue_logit);  // ln(1 - sigmoid(x))

  std::vector<double> out;
  out.reserve(tokens.size());
  std::size_t thinks = 0;
  for (auto tok : tokens) {
    switch (tok) {
      case kThink:
        out.push_back(log_p);
        ++thinks;
        break;
      case kStop:
        out.push_back(thinks >= static_cast<std::size_t>(l_max) ? 0.0 : log_1mp);
        break;
      case kAnswerCorrect:
      case kAnswerWrong: {
        const auto a = answer_terms(task, static_cast<double>(thinks) + care_bonus(params));
        out.push_back(std::log(tok == kAnswerCorrect ? a.q : 1.0 - a.q));
        break;
      }
      default:
        throw ArgumentError("token " + std::to_string(tok) +
                            " is outside the toy vocabulary");
    }
  }
  return out;
}

std::vector<double> token_logprob_grads(const ToyPolicy& policy,
                                        const SyntheticTask& task,
                                        std::span<const TokenId> tokens, int l_max) {
  check_l_max(l_max);
  const auto& params = policy.at(task.tier);
  const double p = continue_probability(params);
  const auto col_cont = tier_offset(task.tier);
  const auto col_care = col_cont + 1;

  std::vector<double> jac(tokens.size() * kNumParams, 0.0);
  std::size_t thinks = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    double* row = jac.data() + t * kNumParams;
    switch (tokens[t]) {
      case kThink:
        row[col_cont] = 1.0 - p;
        ++thinks;
        break;
      case kStop:
        if (thinks < static_cast<std::size_t>(l_max)) row[col_cont] = -p;
        break;
      case kAnswerCorrect:
      case kAnswerWrong: {
        const auto a = answer_terms(task, static_cast<double>(thinks) + care_bonus(params));
        const double db = sigmoid(params.care_logit);
        row[col_care] = tokens[t] == kAnswerCorrect ? a.dq_db * db / a.q
                                                    : -a.dq_db * db / (1.0 - a.q);
        break;
      }
      default:
        throw ArgumentError("token outside the toy vocabulary");
    }
  }
  return jac;
}

double rollout_logprob(const ToyPolicy& policy, const Rollout& rollout,
                       const SyntheticTask& task, int l_max) {
  double sum = 0.0;
  for (double lp : token_logprobs(policy, task, rollout.tokens, l_max)) sum += lp;
  return sum;
}

std::array<double, kParamsPerTier> rollout_grad(const ToyPolicy& policy,
                                                const Rollout& rollout,
                                                const SyntheticTask& task,
                                                int l_max) {
  const auto jac = token_logprob_grads(policy, task, rollout.tokens, l_max);
  const auto off = tier_offset(task.tier);
  std::array<double, kParamsPerTier> g{};
  for (std::size_t t = 0; t < rollout.tokens.size(); ++t) {
    for (std::size_t k = 0; k < kParamsPerTier; ++k) g[k] += jac[t * kNumParams + off + k];
  }
  return g;
}

Rollout make_rollout(const ToyPolicy& policy, const SyntheticTask& task,
                     std::size_t think_tokens, bool correct, int l_max) {
  check_l_max(l_max);
  if (think_tokens > static_cast<std::size_t>(l_max)) {
    throw ArgumentError("think length exceeds l_max");
  }
  Rollout r;
  r.tokens.assign(think_tokens, kThink);
  r.tokens.push_back(kStop);
  r.tokens.push_back(correct ? kAnswerCorrect : kAnswerWrong);
  r.length = r.tokens.size();
  r.correct = correct;
  r.format_ok = true;
  r.logp_new = token_logprobs(policy, task, r.tokens, l_max);
  r.logp_old = r.logp_new;
  r.logp_ref = r.logp_new;
  return r;
}

Rollout sample_response(const ToyPolicy& policy, const SyntheticTask& task,
                        Rng& rng, int l_max, const ToyPolicy* reference) {
  check_l_max(l_max);
  const auto& params = policy.at(task.tier);
  const double p = continue_probability(params);
  std::size_t thinks = 0;
  while (thinks < static_cast<std::size_t>(l_max) && rng.bernoulli(p)) ++thinks;
  const double q =
      answer_terms(task, static_cast<double>(thinks) + care_bonus(params)).q;
  const bool correct = rng.bernoulli(q);

  auto r = make_rollout(policy, task, thinks, correct, l_max);
  if (reference != nullptr) {
    r.logp_ref = token_logprobs(*reference, task, r.tokens, l_max);
  }
  return r;
}

}  // namespace fastgrpo::toy
