// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failures (capped at 1).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fastgrpo/config.hpp"
#include "fastgrpo/curriculum.hpp"
#include "fastgrpo/difficulty.hpp"
#include "fastgrpo/error.hpp"
#include "fastgrpo/grpo.hpp"
#include "fastgrpo/harness.hpp"
#include "fastgrpo/image_complexity.hpp"
#include "fastgrpo/random.hpp"
#include "fastgrpo/rewards.hpp"
#include "fastgrpo/toy_policy.hpp"
#include "oracles.hpp"

using namespace fastgrpo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    out.pass = false;
    out.detail += fmt("; over the %.0f s budget", limit_s);
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

// 1 ---------------------------------------------------------------------------
Outcome length_reward_oracle() {
  const double lengths[] = {0, 1, 5, 10, 25, 50, 99.5, 150, 200, 400};
  const double levels[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  double worst = 0.0;
  int n = 0;
  for (double length : lengths) {
    for (double s_d : levels) {
      for (double r_a : {0.0, 1.0}) {
        for (double theta : levels) {
          for (int k = 1; k <= 20; ++k) {
            const double avg = 10.0 * k;
            LengthContext ctx;
            ctx.length = length;
            ctx.batch_mean = avg;
            const double got = fast_length_reward(ctx, s_d, theta, r_a);
            const double want = oracle::length_reward_by_branches(length, s_d, theta, r_a, avg);
            worst = std::max(worst, std::isnan(want) ? INFINITY : std::abs(got - want));
            ++n;
          }
        }
      }
    }
  }
  return {n == 10000 && worst <= 1e-12, fmt("max |diff| %.3g over %d tuples", worst, n)};
}

// 2 ---------------------------------------------------------------------------
Outcome baseline_spot_checks() {
  std::vector<std::string> bad;
  auto expect = [&](const char* what, double got, double want) {
    if (!(std::abs(got - want) <= 1e-12)) bad.push_back(fmt("%s=%.15g want %.15g", what, got, want));
  };
  LengthContext k;
  k.group_min = 12;
  k.group_max = 40;
  k.length = 12;
  expect("kimi(correct,min)", kimi_length_penalty(k, true), 0.5);
  k.length = 40;
  expect("kimi(correct,max)", kimi_length_penalty(k, true), -0.5);

  LengthContext d;
  d.max_length = 64;
  d.group_size = 8;
  d.group_correct = 3;
  d.mean_correct_length = 20;
  d.length = dast_budget(d);
  expect("dast(correct,0)", dast_length_reward(d, true), 0.5);
  expect("dast(incorrect,0)", dast_length_reward(d, false), -0.1);

  LengthContext c;
  c.max_length = 64;
  for (auto [right, wrong] : {std::pair{kCosineCorrect, kCosineWrong},
                              std::pair{CosineEndpoints{2.0, 0.25}, CosineEndpoints{-0.5, -2.0}}}) {
    c.length = 0;
    expect("cos(correct,0)", cosine_length_reward(c, true, right, wrong), right.at_zero);
    expect("cos(wrong,0)", cosine_length_reward(c, false, right, wrong), wrong.at_zero);
    c.length = 64;
    expect("cos(correct,T)", cosine_length_reward(c, true, right, wrong), right.at_max);
    expect("cos(wrong,T)", cosine_length_reward(c, false, right, wrong), wrong.at_max);
  }
  std::string detail = "kimi, dast and cosine endpoints exact";
  if (!bad.empty()) detail = bad.front();
  return {bad.empty(), detail};
}

// 3 ---------------------------------------------------------------------------
Outcome beta_endpoints() {
  const double at_hard = adaptive_beta(1.0, 0.001, 0.03);
  const double at_easy = adaptive_beta(0.0, 0.001, 0.03);
  bool monotone = true;
  double prev = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const double b = adaptive_beta(i / 999.0, 0.001, 0.03);
    monotone = monotone && b < prev;
    prev = b;
  }
  return {at_hard == 0.001 && at_easy == 0.03 && monotone,
          fmt("beta(1)=%.17g beta(0)=%.17g strictly decreasing=%s", at_hard, at_easy,
              monotone ? "yes" : "no")};
}

// 4 ---------------------------------------------------------------------------
Outcome advantage_contract() {
  Rng rng(2024);
  double worst_mean = 0.0;
  double lo_std = INFINITY, hi_std = -INFINITY;
  int degenerate = 0;
  bool zeros = true;
  for (int trial = 0; trial < 10000; ++trial) {
    // Rewards as the trainer forms them: integer lengths, a batch mean, the
    // difficulty-aware length term and lambda = 0.5 weights.
    const auto g = 2 + rng.index(15);
    LengthContext ctx;
    ctx.batch_mean = static_cast<double>(2 + rng.index(65));
    const double s_d = rng.uniform();
    const double theta = rng.uniform();
    const double q = rng.uniform();
    std::vector<double> r(g);
    for (auto& v : r) {
      ctx.length = static_cast<double>(2 + rng.index(65));
      const double r_a = rng.bernoulli(q) ? 1.0 : 0.0;
      const double r_f = rng.bernoulli(0.9) ? 1.0 : 0.0;
      v = total_reward(r_a, r_f, fast_length_reward(ctx, s_d, theta, r_a), 0.5, 0.5);
    }
    const auto a = group_advantages(r);
    if (std::all_of(r.begin(), r.end(), [&](double v) { return v == r[0]; })) {
      ++degenerate;
      zeros = zeros && std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
      continue;
    }
    const double n = static_cast<double>(g);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double var = 0.0;
    for (double v : a) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    worst_mean = std::max(worst_mean, std::abs(mean));
    lo_std = std::min(lo_std, sd);
    hi_std = std::max(hi_std, sd);
  }
  const bool ok = worst_mean <= 1e-9 && lo_std >= 0.999 && hi_std <= 1.0 && zeros && degenerate > 0;
  return {ok, fmt("max |mean| %.2g, std in [%.6f, %.6f], %d degenerate groups all zero=%s",
                  worst_mean, lo_std, hi_std, degenerate, zeros ? "yes" : "no")};
}

// 5 ---------------------------------------------------------------------------
struct GradientCase {
  toy::ToyPolicy policy;
  std::vector<toy::SyntheticTask> tasks;
  std::vector<RolloutGroup> groups;
  std::vector<double> betas;
};

constexpr int kGradLMax = 16;
constexpr double kGradEps = 0.2;

toy::ToyPolicy jitter(const toy::ToyPolicy& p, Rng& rng, double scale) {
  auto theta = p.flat();
  for (auto& v : theta) v += scale * (rng.uniform() * 2 - 1);
  toy::ToyPolicy out = p;
  out.set_flat(theta);
  return out;
}

GradientCase make_gradient_case(Rng& rng) {
  GradientCase c;
  std::vector<double> theta(toy::kNumParams);
  for (auto& v : theta) v = rng.uniform() * 4 - 2;
  c.policy.set_flat(theta);
  const auto old_policy = jitter(c.policy, rng, 0.3);
  const auto ref_policy = jitter(c.policy, rng, 0.5);
  const auto ngroups = 1 + rng.index(4);
  for (std::size_t g = 0; g < ngroups; ++g) {
    const auto task = toy::SyntheticTask::defaults(kAllTiers[rng.index(3)]);
    c.tasks.push_back(task);
    RolloutGroup group;
    group.question_id = "g" + std::to_string(g);
    const auto size = 2 + rng.index(5);
    for (std::size_t i = 0; i < size; ++i) {
      group.rollouts.push_back(toy::sample_response(old_policy, task, rng, kGradLMax, &ref_policy));
      group.advantages.push_back(rng.uniform() * 4 - 2);
    }
    c.groups.push_back(std::move(group));
    c.betas.push_back(0.001 + 0.029 * rng.uniform());
  }
  toy::ToyBatchPolicy adapter(c.policy, c.tasks, kGradLMax);
  refresh_logp_new(adapter, std::span<RolloutGroup>(c.groups));
  return c;
}

double objective_at(const GradientCase& c, std::span<const double> theta,
                    bool zero_advantages) {
  toy::ToyPolicy p = c.policy;
  p.set_flat(theta);
  auto groups = c.groups;
  if (zero_advantages) {
    for (auto& g : groups) std::fill(g.advantages.begin(), g.advantages.end(), 0.0);
  }
  toy::ToyBatchPolicy adapter(p, c.tasks, kGradLMax);
  refresh_logp_new(adapter, std::span<RolloutGroup>(groups));
  return grpo_objective(groups, c.betas, kGradEps).objective;
}

std::vector<double> central_difference(const GradientCase& c, bool zero_advantages) {
  const double h = 1e-5;
  auto theta = c.policy.flat();
  std::vector<double> fd(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto up = theta, down = theta;
    up[k] += h;
    down[k] -= h;
    fd[k] = (objective_at(c, up, zero_advantages) - objective_at(c, down, zero_advantages)) / (2 * h);
  }
  return fd;
}

// beta_g * (ratio_ref - 1) * d log pi, with the same 1/groups, 1/G, 1/|o|
// normalisation as the objective.
std::vector<double> kl_gradient_by_formula(const GradientCase& c) {
  std::vector<double> grad(toy::kNumParams, 0.0);
  const double per_group = 1.0 / static_cast<double>(c.groups.size());
  for (std::size_t g = 0; g < c.groups.size(); ++g) {
    const auto& group = c.groups[g];
    for (const auto& o : group.rollouts) {
      const auto jac = toy::token_logprob_grads(c.policy, c.tasks[g], o.tokens, kGradLMax);
      const double scale = per_group / static_cast<double>(group.rollouts.size()) /
                           static_cast<double>(o.tokens.size());
      for (std::size_t t = 0; t < o.tokens.size(); ++t) {
        const double ratio_ref = std::exp(o.logp_ref[t] - o.logp_new[t]);
        for (std::size_t k = 0; k < toy::kNumParams; ++k) {
          grad[k] += scale * c.betas[g] * (ratio_ref - 1.0) * jac[t * toy::kNumParams + k];
        }
      }
    }
  }
  return grad;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Outcome gradient_fidelity() {
  Rng rng(77);
  double worst_rel = 0.0;
  double worst_kl_impl = 0.0;
  double worst_kl_fd = 0.0;
  double clip_seen = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto c = make_gradient_case(rng);
    toy::ToyBatchPolicy adapter(c.policy, c.tasks, kGradLMax);

    const auto full = grpo_objective(c.groups, c.betas, kGradEps);
    clip_seen += full.diagnostics.clip_fraction;
    const auto analytic = objective_gradient(adapter, std::span<const RolloutGroup>(c.groups), full);
    const auto fd = central_difference(c, false);
    const double scale = std::max({max_abs(analytic), max_abs(fd), 1e-12});
    worst_rel = std::max(worst_rel, max_abs_diff(analytic, fd) / scale);

    auto kl_only = c.groups;
    for (auto& g : kl_only) std::fill(g.advantages.begin(), g.advantages.end(), 0.0);
    const auto kl_res = grpo_objective(kl_only, c.betas, kGradEps);
    const auto kl_impl = objective_gradient(adapter, std::span<const RolloutGroup>(kl_only), kl_res);
    const auto formula = kl_gradient_by_formula(c);
    worst_kl_impl = std::max(worst_kl_impl, max_abs_diff(kl_impl, formula));
    worst_kl_fd = std::max(worst_kl_fd, max_abs_diff(central_difference(c, true), formula));
  }
  const bool ok = worst_rel <= 1e-4 && worst_kl_impl <= 1e-8 && worst_kl_fd <= 1e-8;
  return {ok, fmt("worst relative error %.2g; kl term vs formula %.2g (analytic), %.2g "
                  "(finite differences); mean clip fraction %.3f",
                  worst_rel, worst_kl_impl, worst_kl_fd, clip_seen / 100)};
}

// 6 ---------------------------------------------------------------------------
Outcome kl_nonnegative() {
  double min_off_zero = INFINITY;
  double at_zero = NAN;
  int negative = 0;
  for (int i = -5000; i <= 5000; ++i) {
    const double log_ratio = i * 1e-3;
    const double kl = kl_value(0.0, log_ratio);
    if (kl < 0) ++negative;
    if (i == 0) {
      at_zero = kl;
    } else {
      min_off_zero = std::min(min_off_zero, kl);
    }
  }
  const bool ok = negative == 0 && std::abs(at_zero) <= 1e-12 && min_off_zero > 1e-12;
  return {ok, fmt("%d negative values; kl(0)=%.3g; smallest off-zero value %.3g", negative,
                  at_zero, min_off_zero)};
}

// 7 ---------------------------------------------------------------------------
struct RunSummary {
  std::vector<TierReport> before;
  std::vector<TierReport> after;
};

constexpr std::uint64_t kEvalSeed = 4242;

RunSummary run_and_evaluate(const TrainConfig& cfg) {
  auto bank = generate_question_bank(cfg.n_per_tier, cfg.seed);
  const auto result = train(cfg, bank.questions, bank.tasks);
  RunSummary s;
  s.before = evaluate(result.initial_policy, bank.questions, bank.tasks, cfg.eval_group_size,
                      kEvalSeed, cfg.l_max);
  s.after = evaluate(result.policy, bank.questions, bank.tasks, cfg.eval_group_size, kEvalSeed,
                     cfg.l_max);
  return s;
}

Outcome pilot_directions() {
  TrainConfig base;
  base.sampler = SamplerKind::kNone;
  base.steps_per_epoch = 20;  // 10 epochs x 20 = 200 steps
  base.seed = 0;

  auto ratio_for = [&](RewardScheme scheme) {
    auto cfg = base;
    cfg.reward_scheme = scheme;
    const auto s = run_and_evaluate(cfg);
    return s.after[3].mean_length / s.before[3].mean_length;
  };
  const double short_ratio = ratio_for(RewardScheme::kPilotShort);
  const double lengthy_ratio = ratio_for(RewardScheme::kPilotLengthy);
  const double none_ratio = ratio_for(RewardScheme::kNone);
  const bool ok = short_ratio <= 0.7 && lengthy_ratio >= 1.3 && std::abs(none_ratio - 1) <= 0.2;
  return {ok, fmt("final/initial mean length: short %.3f, lengthy %.3f, none %.3f",
                  short_ratio, lengthy_ratio, none_ratio)};
}

// 8 ---------------------------------------------------------------------------
Outcome fast_end_to_end() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig cfg;
    cfg.seed = seed;
    const auto s = run_and_evaluate(cfg);
    const double easy_len = s.after[0].mean_length;
    const double hard_len = s.after[2].mean_length;
    const double acc_before = s.before[0].accuracy;
    const double acc_after = s.after[0].accuracy;
    const bool seed_ok = hard_len >= 1.2 * easy_len && acc_after >= acc_before - 0.02;
    ok = ok && seed_ok;
    detail += fmt("%sseed %llu hard/easy %.2f easy acc %.3f->%.3f", detail.empty() ? "" : "; ",
                  static_cast<unsigned long long>(seed), hard_len / easy_len, acc_before, acc_after);
  }
  return {ok, detail};
}

// 9 ---------------------------------------------------------------------------
Outcome curriculum_contract() {
  std::vector<Question> bank;
  for (int i = 0; i < 450; ++i) {
    Question q;
    q.id = "q" + std::to_string(i);
    q.image = GrayImage(1, 1, 0);
    q.answer = "A";
    q.extrinsic_difficulty = (i % 9) / 8.0;
    bank.push_back(q);
  }
  CurriculumParams p;
  p.strategy = SamplerKind::kSlowToFastBinary;
  p.total_epochs = 10;
  p.epoch = 1;
  const auto first = kept_indices(bank, p);
  p.epoch = 10;
  const auto last = kept_indices(bank, p);
  const auto easy_in_first = std::count_if(first.begin(), first.end(), [&](auto i) {
    return *bank[i].extrinsic_difficulty <= 0.25;
  });
  const auto hard_in_last = std::count_if(last.begin(), last.end(), [&](auto i) {
    return *bank[i].extrinsic_difficulty >= 0.75;
  });

  p.strategy = SamplerKind::kSlowToFastContinuous;
  p.epoch = 10;
  const auto draws = sample_batch(bank, p, 10000, 99);
  const auto easy = std::count_if(draws.begin(), draws.end(), [&](auto i) {
    return *bank[i].extrinsic_difficulty <= 0.25;
  });
  const double frac = static_cast<double>(easy) / static_cast<double>(draws.size());
  const bool ok = !first.empty() && !last.empty() && easy_in_first == 0 && hard_in_last == 0 &&
                  draws.size() == 10000 && std::abs(frac - 0.4) <= 0.02;
  return {ok, fmt("epoch 1 keeps %zu (%ld easy), epoch 10 keeps %zu (%ld hard); easy fraction "
                  "at t=T %.4f",
                  first.size(), static_cast<long>(easy_in_first), last.size(),
                  static_cast<long>(hard_in_last), frac)};
}

// 10 --------------------------------------------------------------------------
class OneHot final : public SemanticEntropyProvider {
 public:
  std::vector<double> classify(const GrayImage&) const override {
    std::vector<double> p(16, 0.0);
    p[3] = 1.0;
    return p;
  }
  std::size_t num_classes() const override { return 16; }
};

struct GlcmTally {
  long patches = 0;
  long mismatched_probs = 0;
  long degenerate_mismatch = 0;
  double worst_entropy = 0.0;
};

void check_patch(const std::vector<std::vector<int>>& cells, int max_radius, GlcmTally& tally) {
  static constexpr std::array<std::pair<int, int>, 4> kDirs{{{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};
  static constexpr std::array<int, 4> kAngles{0, 45, 90, 135};
  LevelMatrix patch(cells.size(), cells[0].size());
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[0].size(); ++c) patch.at(r, c) = static_cast<std::uint16_t>(cells[r][c]);
  }
  ++tally.patches;
  for (int d = 1; d <= max_radius; ++d) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto pc = oracle::enumerate_pairs(cells, kDirs[k].first * d, kDirs[k].second * d);
      if (pc.total == 0) {
        try {
          glcm(patch, 4, d, kAngles[k]);
          ++tally.degenerate_mismatch;
        } catch (const DegenerateError&) {
        }
        continue;
      }
      const auto m = glcm(patch, 4, d, kAngles[k]);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const auto it = pc.counts.find({a, b});
          const double want =
              it == pc.counts.end() ? 0.0
                                    : static_cast<double>(it->second) / static_cast<double>(pc.total);
          if (m.at(a, b) != want) ++tally.mismatched_probs;
        }
      }
      tally.worst_entropy =
          std::max(tally.worst_entropy, std::abs(glcm_entropy(m) - oracle::entropy_of_counts(pc)));
    }
  }
}

Outcome glcm_oracle() {
  GlcmTally tally;
  // Every 4-level patch with at most 8 pixels, then random fills of every
  // shape up to 8x8.
  for (int rows = 1; rows <= 8; ++rows) {
    for (int cols = 1; rows * cols <= 8; ++cols) {
      const int n = rows * cols;
      std::vector<std::vector<int>> cells(rows, std::vector<int>(cols));
      for (long code = 0; code < (1L << (2 * n)); ++code) {
        for (int i = 0; i < n; ++i) cells[i / cols][i % cols] = static_cast<int>((code >> (2 * i)) & 3);
        check_patch(cells, 7, tally);
      }
    }
  }
  Rng rng(8);
  for (int rows = 1; rows <= 8; ++rows) {
    for (int cols = 1; cols <= 8; ++cols) {
      std::vector<std::vector<int>> cells(rows, std::vector<int>(cols));
      for (int rep = 0; rep < 200; ++rep) {
        for (auto& r : cells) {
          for (auto& v : r) v = static_cast<int>(rng.index(4));
        }
        check_patch(cells, 7, tally);
      }
    }
  }

  GlcmConfig cfg;
  const GrayImage flat(64, 64, 123);
  const double flat_texture = mean_patch_entropy(flat, cfg);
  const double flat_raw = image_complexity_raw(flat, cfg, OneHot{});
  const double flat_norm = image_complexity_norm(flat, cfg, OneHot{});

  const auto bank = generate_question_bank(100, 0);
  std::array<double, 3> mean{};
  for (const auto& q : bank.questions) mean[static_cast<std::size_t>(*q.tier)] += *q.image_complexity / 100.0;

  const bool ok = tally.mismatched_probs == 0 && tally.degenerate_mismatch == 0 &&
                  tally.worst_entropy <= 1e-12 && flat_texture == 0.0 && flat_raw == 0.0 &&
                  flat_norm == 0.0 && mean[0] < mean[1] && mean[1] < mean[2];
  return {ok, fmt("%ld patches, %ld probability mismatches, worst entropy diff %.2g; constant "
                  "image %.3g/%.3g; tier means %.4f < %.4f < %.4f",
                  tally.patches, tally.mismatched_probs + tally.degenerate_mismatch,
                  tally.worst_entropy, flat_raw, flat_norm, mean[0], mean[1], mean[2])};
}

// 11 --------------------------------------------------------------------------
Outcome difficulty_combination() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double s = i / 9.0, h = j / 9.0;
      worst = std::max(worst, std::abs(combined_difficulty(s, h, DifficultyCombine::kMultiplicative) - s * h));
      for (double alpha : {0.5, 0.3}) {
        worst = std::max(worst, std::abs(combined_difficulty(s, h, DifficultyCombine::kWeightedSum, alpha) -
                                         (alpha * s + (1 - alpha) * h)));
      }
    }
  }
  const bool tiers = difficulty_tier(0.75) == Tier::kEasy && difficulty_tier(0.25) == Tier::kHard &&
                     difficulty_tier(std::nextafter(0.75, 0.0)) == Tier::kMedium &&
                     difficulty_tier(std::nextafter(0.25, 1.0)) == Tier::kMedium &&
                     difficulty_tier(0.5) == Tier::kMedium;
  return {worst <= 1e-12 && tiers,
          fmt("max |diff| %.2g on 100 points; inclusive tier cuts %s", worst, tiers ? "yes" : "no")};
}

// 12 --------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome reproducibility() {
  const auto dir = fs::temp_directory_path() / "fastgrpo_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  save_config(dir / "run.ini", TrainConfig{});
  std::string codes;
  for (const char* name : {"a", "b"}) {
    const std::string cmd = std::string(FASTGRPO_CLI) + " train --config " +
                            (dir / "run.ini").string() + " --seed 11 --out " +
                            (dir / name).string() + " > /dev/null";
    codes += std::to_string(std::system(cmd.c_str())) + " ";
  }
  const auto a = slurp(dir / "a" / "metrics.csv");
  const auto b = slurp(dir / "b" / "metrics.csv");
  const bool ok = codes == "0 0 " && !a.empty() && a == b;
  fs::remove_all(dir);
  return {ok, fmt("exit codes %s; metrics.csv %zu bytes, identical=%s", codes.c_str(), a.size(),
                  a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  criterion(1, "length reward matches branch enumerator", 1.0, length_reward_oracle);
  criterion(2, "baseline length reward spot checks", 0, baseline_spot_checks);
  criterion(3, "adaptive kl coefficient endpoints and monotonicity", 0, beta_endpoints);
  criterion(4, "group advantage contract", 5.0, advantage_contract);
  criterion(5, "objective gradient matches finite differences", 30.0, gradient_fidelity);
  criterion(6, "k3 kl estimator is nonnegative", 0, kl_nonnegative);
  criterion(7, "pilot length rewards move length the expected way", 120.0, pilot_directions);
  criterion(8, "difficulty-aware training keeps hard answers longer", 0, fast_end_to_end);
  criterion(9, "curriculum filters and continuous schedule", 0, curriculum_contract);
  criterion(10, "co-occurrence matrix matches pair enumeration", 0, glcm_oracle);
  criterion(11, "difficulty combination and tier cuts", 0, difficulty_combination);
  criterion(12, "training is byte-reproducible", 0, reproducibility);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
