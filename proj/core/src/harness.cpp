#include "fastgrpo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "fastgrpo/curriculum.hpp"
#include "fastgrpo/difficulty.hpp"
#include "fastgrpo/error.hpp"
#include "fastgrpo/grpo.hpp"
#include "fastgrpo/io.hpp"
#include "fastgrpo/random.hpp"
#include "fastgrpo/rewards.hpp"

namespace fastgrpo {

namespace {

// Stream tags for Rng::derive so that no two phases share a stream.
enum StreamTag : std::uint64_t {
  kBankStream = 1,
  kWarmupStream = 2,
  kBatchStream = 3,
  kRolloutStream = 4,
  kEvalStream = 5,
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t tier_index(Tier t) { return static_cast<std::size_t>(t); }

struct Tally {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : kNaN; }
};

void append_field(std::string& line, double v) {
  char buf[64];
  if (std::isnan(v)) {
    std::snprintf(buf, sizeof buf, ",nan");
  } else {
    std::snprintf(buf, sizeof buf, ",%.6f", v);
  }
  line += buf;
}

int correct_count(const RolloutGroup& g) {
  return static_cast<int>(std::count_if(g.rollouts.begin(), g.rollouts.end(),
                                        [](const Rollout& r) { return r.correct; }));
}

}  // namespace

GrayImage tier_texture(Tier tier, std::uint64_t image_seed, std::size_t size) {
  Rng rng(image_seed);
  GrayImage img(size, size);
  switch (tier) {
    case Tier::kEasy: {
      img = GrayImage(size, size, static_cast<std::uint8_t>(32 + rng.index(192)));
      break;
    }
    case Tier::kMedium: {
      const auto a = static_cast<std::uint8_t>(rng.index(128));
      const auto b = static_cast<std::uint8_t>(128 + rng.index(128));
      const std::size_t width = 8;
      const bool vertical = rng.bernoulli(0.5);
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
          const auto band = (vertical ? c : r) / width;
          img.at(r, c) = band % 2 == 0 ? a : b;
        }
      }
      break;
    }
    case Tier::kHard: {
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
          img.at(r, c) = static_cast<std::uint8_t>(rng.index(256));
        }
      }
      break;
    }
  }
  return img;
}

SyntheticBank generate_question_bank(int n_per_tier, std::uint64_t seed) {
  if (n_per_tier < 1) throw ArgumentError("n_per_tier must be >= 1");
  constexpr const char* kAnswers[] = {"A", "B", "C", "D"};
  SyntheticBank bank;
  for (auto tier : kAllTiers) {
    for (int i = 0; i < n_per_tier; ++i) {
      auto rng = Rng::derive(seed, {kBankStream, tier_index(tier),
                                    static_cast<std::uint64_t>(i)});
      const auto image_seed = rng.next();
      char id[32];
      std::snprintf(id, sizeof id, "%s-%04d", std::string(to_string(tier)).c_str(), i);

      Question q;
      q.id = id;
      q.image = tier_texture(tier, image_seed);
      q.answer = kAnswers[rng.index(4)];
      q.tier = tier;
      bank.questions.push_back(std::move(q));
      bank.tasks.push_back(toy::SyntheticTask::defaults(tier, image_seed));
    }
  }
  score_images(bank.questions);
  return bank;
}

std::vector<toy::SyntheticTask> tasks_for(std::span<const Question> bank) {
  std::vector<toy::SyntheticTask> tasks;
  tasks.reserve(bank.size());
  for (const auto& q : bank) {
    if (!q.tier) throw ArgumentError("question '" + q.id + "' has no tier");
    tasks.push_back(toy::SyntheticTask::defaults(*q.tier));
  }
  return tasks;
}

void score_images(std::span<Question> bank, const GlcmConfig& cfg,
                  const SemanticEntropyProvider& provider) {
  for (auto& q : bank) {
    if (!q.image_complexity) q.image_complexity = image_complexity_norm(q.image, cfg, provider);
  }
}

std::string metrics_header() {
  return "step,epoch,mean_length,mean_length_easy,mean_length_medium,"
         "mean_length_hard,accuracy,accuracy_easy,accuracy_medium,"
         "accuracy_hard,mean_reward,mean_beta,theta,clip_fraction,mean_kl";
}

std::string format_metrics_row(const MetricsRow& row) {
  std::string line = std::to_string(row.step) + "," + std::to_string(row.epoch);
  append_field(line, row.mean_length);
  for (double v : row.tier_length) append_field(line, v);
  append_field(line, row.accuracy);
  for (double v : row.tier_accuracy) append_field(line, v);
  append_field(line, row.mean_reward);
  append_field(line, row.mean_beta);
  append_field(line, row.theta);
  append_field(line, row.clip_fraction);
  append_field(line, row.mean_kl);
  return line;
}

int steps_per_epoch(const TrainConfig& cfg, std::size_t bank_size) {
  if (cfg.steps_per_epoch > 0) return cfg.steps_per_epoch;
  return std::max(1, static_cast<int>(bank_size) / cfg.batch_size);
}

TrainResult train(const TrainConfig& cfg, std::vector<Question>& bank,
                  std::span<const toy::SyntheticTask> tasks,
                  const TrainSinks& sinks) {
  cfg.validate();
  if (bank.empty()) throw ArgumentError("train: empty question bank");
  if (tasks.size() != bank.size()) throw ArgumentError("train: one task per question required");
  score_images(bank);

  const auto group_size = static_cast<std::size_t>(cfg.group_size);
  const double reward_max_length = cfg.l_max + 2.0;  // THINK cap + STOP + ANSWER

  TrainResult result;
  result.initial_policy = toy::ToyPolicy(cfg.init_continue_logit, cfg.init_care_logit);
  auto& policy = result.policy;
  policy = result.initial_policy;
  const toy::ToyPolicy reference = policy;

  // Unfiltered scoring pass under the current policy. Run before every epoch:
  // a question the filter drops is never rolled out, so without it a stale
  // score would exclude the question for good.
  auto rescore = [&](int epoch) {
    for (std::size_t i = 0; i < bank.size(); ++i) {
      auto rng = Rng::derive(cfg.seed, {kWarmupStream, static_cast<std::uint64_t>(epoch), i});
      int correct = 0;
      for (std::size_t j = 0; j < group_size; ++j) {
        correct += toy::sample_response(policy, tasks[i], rng, cfg.l_max).correct ? 1 : 0;
      }
      bank[i].extrinsic_difficulty = extrinsic_difficulty(correct, cfg.group_size);
    }
  };

  if (sinks.metrics_csv) *sinks.metrics_csv << metrics_header() << '\n';

  const int steps = steps_per_epoch(cfg, bank.size());
  int step = 0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rescore(epoch);
    const auto curriculum = CurriculumParams::from_config(cfg, epoch);
    for (int s = 0; s < steps; ++s) {
      ++step;
      const auto batch_seed =
          Rng::derive(cfg.seed, {kBatchStream, static_cast<std::uint64_t>(step)}).next();
      const auto batch = sample_batch(bank, curriculum,
                                      static_cast<std::size_t>(cfg.batch_size), batch_seed);

      // Rollouts, then per-question difficulty and beta.
      std::vector<RolloutGroup> groups(batch.size());
      std::vector<toy::SyntheticTask> group_tasks;
      std::vector<double> s_d(batch.size());
      std::vector<double> betas(batch.size());
      for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto qi = batch[b];
        group_tasks.push_back(tasks[qi]);
        auto rng = Rng::derive(cfg.seed, {kRolloutStream, static_cast<std::uint64_t>(step), b});
        auto& group = groups[b];
        group.question_id = bank[qi].id;
        for (std::size_t j = 0; j < group_size; ++j) {
          group.rollouts.push_back(toy::sample_response(policy, tasks[qi], rng, cfg.l_max, &reference));
        }
        const double s_ext = extrinsic_difficulty(correct_count(group), cfg.group_size);
        bank[qi].extrinsic_difficulty = s_ext;
        s_d[b] = combined_difficulty(s_ext, *bank[qi].image_complexity,
                                     cfg.difficulty_combine, cfg.alpha);
        betas[b] = adaptive_beta(s_ext, cfg.beta_min, cfg.beta_max);
      }

      // Threshold over unique questions; a repeated question keeps its latest score.
      std::map<std::size_t, double> unique_scores;
      for (std::size_t b = 0; b < batch.size(); ++b) unique_scores[batch[b]] = s_d[b];
      std::vector<double> scores;
      for (const auto& [qi, v] : unique_scores) scores.push_back(v);
      const double theta = batch_threshold(scores, cfg.difficulty_percentile);

      Tally length_all;
      for (const auto& g : groups) {
        for (const auto& r : g.rollouts) length_all.add(static_cast<double>(r.length));
      }
      const double batch_mean = length_all.mean();

      // Rewards and advantages.
      MetricsRow row;
      row.step = step;
      row.epoch = epoch;
      Tally reward_all, acc_all;
      std::array<Tally, kNumTiers> tier_len, tier_acc;
      for (std::size_t b = 0; b < groups.size(); ++b) {
        auto& group = groups[b];
        double min_len = std::numeric_limits<double>::infinity();
        double max_len = 0.0;
        Tally correct_len;
        for (const auto& r : group.rollouts) {
          const auto len = static_cast<double>(r.length);
          min_len = std::min(min_len, len);
          max_len = std::max(max_len, len);
          if (r.correct) correct_len.add(len);
        }
        for (const auto& r : group.rollouts) {
          LengthContext ctx;
          ctx.length = static_cast<double>(r.length);
          ctx.batch_mean = batch_mean;
          ctx.max_length = reward_max_length;
          ctx.group_min = min_len;
          ctx.group_max = max_len;
          ctx.group_correct = static_cast<int>(correct_len.n);
          ctx.group_size = cfg.group_size;
          ctx.mean_correct_length = correct_len.n > 0 ? correct_len.mean() : 0.0;
          const double r_t = length_reward(cfg.reward_scheme, ctx, s_d[b], theta, r.correct);
          const auto breakdown =
              reward_breakdown(r.correct, r.format_ok, r_t, cfg.lambda_f, cfg.lambda_t);
          group.breakdowns.push_back(breakdown);
          group.rewards.push_back(breakdown.total);

          reward_all.add(breakdown.total);
          acc_all.add(breakdown.r_a);
          const auto ti = tier_index(group_tasks[b].tier);
          tier_len[ti].add(ctx.length);
          tier_acc[ti].add(breakdown.r_a);
        }
        group.advantages = group_advantages(group.rewards);
      }

      toy::ToyBatchPolicy batch_policy(policy, group_tasks, cfg.l_max);
      StepDiagnostics diag;
      try {
        diag = policy_update_step(batch_policy, groups, betas, cfg.clip_eps,
                                  cfg.learning_rate);
      } catch (const NumericalError& e) {
        throw NumericalError("step " + std::to_string(step) + ": " + e.what());
      }

      row.mean_length = batch_mean;
      row.accuracy = acc_all.mean();
      for (std::size_t t = 0; t < kNumTiers; ++t) {
        row.tier_length[t] = tier_len[t].mean();
        row.tier_accuracy[t] = tier_acc[t].mean();
      }
      row.mean_reward = reward_all.mean();
      row.mean_beta = diag.mean_beta;
      row.theta = theta;
      row.clip_fraction = diag.clip_fraction;
      row.mean_kl = diag.mean_kl;
      result.metrics.push_back(row);

      if (sinks.metrics_csv) {
        *sinks.metrics_csv << format_metrics_row(row) << '\n';
        sinks.metrics_csv->flush();
      }
      if (sinks.rollouts) append_rollout_log(*sinks.rollouts, groups);
      result.rollouts_logged += length_all.n;
    }
  }
  return result;
}

std::vector<TierReport> evaluate(const toy::ToyPolicy& policy,
                                 std::span<const Question> bank,
                                 std::span<const toy::SyntheticTask> tasks,
                                 int group_size, std::uint64_t seed, int l_max) {
  if (tasks.size() != bank.size()) throw ArgumentError("evaluate: one task per question required");
  if (group_size < 1) throw ArgumentError("evaluate: group size must be >= 1");
  std::array<Tally, kNumTiers> acc, len;
  Tally acc_all, len_all;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    auto rng = Rng::derive(seed, {kEvalStream, i});
    const auto ti = tier_index(tasks[i].tier);
    for (int j = 0; j < group_size; ++j) {
      const auto r = toy::sample_response(policy, tasks[i], rng, l_max);
      const double a = r.correct ? 1.0 : 0.0;
      const double l = static_cast<double>(r.length);
      acc[ti].add(a);
      len[ti].add(l);
      acc_all.add(a);
      len_all.add(l);
    }
  }
  std::vector<TierReport> rows;
  for (auto tier : kAllTiers) {
    const auto ti = tier_index(tier);
    rows.push_back({std::string(to_string(tier)), acc[ti].mean(), len[ti].mean(), acc[ti].n});
  }
  rows.push_back({"overall", acc_all.mean(), len_all.mean(), acc_all.n});
  return rows;
}

}  // namespace fastgrpo
