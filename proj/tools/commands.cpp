#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fastgrpo/config.hpp"
#include "fastgrpo/curriculum.hpp"
#include "fastgrpo/error.hpp"
#include "fastgrpo/harness.hpp"
#include "fastgrpo/image_complexity.hpp"
#include "fastgrpo/io.hpp"
#include "fastgrpo/rewards.hpp"
#include "fastgrpo/toy_policy.hpp"

namespace fastgrpo::cli {

namespace fs = std::filesystem;

namespace {

LengthContext to_context(const ShapeRewardArgs& a, double length) {
  LengthContext ctx;
  ctx.length = length;
  ctx.batch_mean = a.batch_mean;
  ctx.max_length = a.max_length;
  ctx.group_min = a.group_min;
  ctx.group_max = a.group_max;
  ctx.group_correct = a.group_correct;
  ctx.group_size = a.group_size;
  ctx.mean_correct_length = a.mean_correct_length;
  return ctx;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

}  // namespace

int run_train(const TrainArgs& args) {
  auto cfg = args.config.empty() ? TrainConfig{} : load_config(args.config);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + kv + "' is not key=value");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.seed) cfg.seed = *args.seed;
  cfg.validate();

  std::vector<Question> questions;
  std::vector<toy::SyntheticTask> tasks;
  if (cfg.bank.empty()) {
    auto bank = generate_question_bank(cfg.n_per_tier, cfg.seed);
    questions = std::move(bank.questions);
    tasks = std::move(bank.tasks);
  } else {
    questions = parse_question_bank(cfg.bank);
    tasks = tasks_for(questions);
  }

  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string(), ec.message());

  auto metrics = open_out(out_dir / "metrics.csv");
  auto rollouts = open_out(out_dir / "rollouts.jsonl");
  const auto result = train(cfg, questions, tasks, {&metrics, &rollouts});
  result.policy.save(out_dir / "policy.json");
  save_config(out_dir / "config.ini", cfg);

  std::cout << "trained " << result.metrics.size() << " steps, "
            << result.rollouts_logged << " rollouts -> " << out_dir.string() << '\n';
  return kOk;
}

int run_evaluate(const EvaluateArgs& args) {
  const auto policy = toy::ToyPolicy::load(args.policy);
  const auto questions = parse_question_bank(args.bank);
  const auto tasks = tasks_for(questions);
  const auto report =
      evaluate(policy, questions, tasks, args.group_size, args.seed, args.l_max);
  std::printf("tier,accuracy,mean_length,rollouts\n");
  for (const auto& row : report) {
    std::printf("%s,%.6f,%.6f,%zu\n", row.name.c_str(), row.accuracy,
                row.mean_length, row.rollouts);
  }
  return kOk;
}

int run_gen_bank(const GenBankArgs& args) {
  const auto bank = generate_question_bank(args.n, args.seed);
  write_question_bank(args.out, bank.questions);
  std::cout << "wrote " << bank.questions.size() << " questions to "
            << (fs::path(args.out) / "bank.jsonl").string() << '\n';
  return kOk;
}

int run_score_image(const ScoreImageArgs& args) {
  GlcmConfig cfg;
  cfg.gray_levels = args.levels;
  cfg.patch_size = args.patch;
  const auto image = read_pgm(args.path);
  const auto scores = score_image(image, cfg, HistogramSoftmaxProvider{});
  std::printf("%.6f %.6f\n", scores.raw, scores.normalized);
  return kOk;
}

int run_shape_reward(const ShapeRewardArgs& args) {
  const auto scheme = parse_reward_scheme(args.scheme);
  const double r = length_reward(scheme, to_context(args, args.length), args.s_d,
                                 args.theta, args.correct);
  std::printf("%.12g\n", r);
  return kOk;
}

int run_compare_rewards(const CompareRewardsArgs& args) {
  if (!(args.step > 0.0)) throw ArgumentError("--step must be positive");
  constexpr RewardScheme kSchemes[] = {
      RewardScheme::kFast,         RewardScheme::kKimi,
      RewardScheme::kCosFn,        RewardScheme::kDast,
      RewardScheme::kPilotLengthy, RewardScheme::kPilotShort};
  std::printf("L");
  for (auto s : kSchemes) std::printf(",%s", std::string(to_string(s)).c_str());
  std::printf("\n");
  const auto& c = args.context;
  const auto n = static_cast<long>((args.to - args.from) / args.step + 1e-9);
  for (long i = 0; i <= n; ++i) {
    const double length = args.from + static_cast<double>(i) * args.step;
    const auto ctx = to_context(c, length);
    std::printf("%g", length);
    for (auto s : kSchemes) {
      std::printf(",%.6f", length_reward(s, ctx, c.s_d, c.theta, c.correct));
    }
    std::printf("\n");
  }
  return kOk;
}

int run_sample_curriculum(const SampleCurriculumArgs& args) {
  const auto questions = parse_question_bank(args.bank);
  CurriculumParams params;
  params.strategy = parse_sampler(args.strategy);
  params.epoch = args.epoch;
  params.total_epochs = args.of;
  params.easy_cut = args.easy_cut;
  params.hard_cut = args.hard_cut;
  params.p_max = args.p_max;

  std::vector<std::size_t> picked;
  if (args.batch > 0) {
    picked = sample_batch(questions, params, static_cast<std::size_t>(args.batch), args.seed);
  } else {
    picked = kept_indices(questions, params);
    if (picked.empty()) {
      throw CurriculumExhaustedError("curriculum exhausted: strategy " + args.strategy +
                                     " kept no questions in epoch " +
                                     std::to_string(args.epoch));
    }
  }
  for (auto i : picked) std::cout << questions[i].id << '\n';
  return kOk;
}

}  // namespace fastgrpo::cli
