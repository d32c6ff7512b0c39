// fastgrpo: command-line front end for training, evaluation and the
// individual scoring components.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fastgrpo/error.hpp"

using namespace fastgrpo;
using namespace fastgrpo::cli;

namespace {

void add_context_options(CLI::App* cmd, ShapeRewardArgs& a) {
  cmd->add_option("--scheme", a.scheme,
                  "fast|kimi|cosfn|dast|pilot_lengthy|pilot_short|none");
  cmd->add_option("--Lavg", a.batch_mean, "Batch mean length");
  cmd->add_option("--Lmax", a.max_length, "Generation cap")->capture_default_str();
  cmd->add_option("--sd", a.s_d, "Combined difficulty of the question");
  cmd->add_option("--theta", a.theta, "Batch difficulty threshold");
  cmd->add_flag("--correct", a.correct, "The rollout is correct");
  cmd->add_option("--min-len", a.group_min, "Shortest response in the group");
  cmd->add_option("--max-len", a.group_max, "Longest response in the group");
  cmd->add_option("--c", a.group_correct, "Correct responses in the group");
  cmd->add_option("--N", a.group_size, "Group size")->capture_default_str();
  cmd->add_option("--Lr", a.mean_correct_length, "Mean length of correct responses");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FAST-GRPO toy trainer and reward/difficulty tools"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Run FAST-GRPO on a synthetic bank");
  train_cmd->add_option("--config", train.config, "INI config file");
  train_cmd->add_option("--seed", train.seed, "Override the config seed");
  train_cmd->add_option("--out", train.out, "Output directory")->capture_default_str();
  train_cmd->add_option("--set", train.overrides, "Override a config key (key=value)");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Per-tier accuracy and length of a policy");
  eval_cmd->add_option("--policy", eval.policy, "policy.json")->required();
  eval_cmd->add_option("--bank", eval.bank, "bank.jsonl")->required();
  eval_cmd->add_option("--group-size", eval.group_size)->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed)->capture_default_str();
  eval_cmd->add_option("--l-max", eval.l_max)->capture_default_str();

  GenBankArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-bank", "Write a synthetic question bank");
  gen_cmd->add_option("--n", gen.n, "Questions per tier")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();

  ScoreImageArgs score;
  auto* score_cmd = app.add_subcommand("score-image", "Print raw and normalized image complexity");
  score_cmd->add_option("path", score.path, "PGM (P5) image")->required();
  score_cmd->add_option("--levels", score.levels)->capture_default_str();
  score_cmd->add_option("--patch", score.patch)->capture_default_str();

  ShapeRewardArgs shape;
  auto* shape_cmd = app.add_subcommand("shape-reward", "Print one length reward");
  add_context_options(shape_cmd, shape);
  shape_cmd->add_option("--L", shape.length, "Response length")->required();

  CompareRewardsArgs compare;
  auto* compare_cmd =
      app.add_subcommand("compare-rewards", "CSV of every length reward over a sweep of L");
  add_context_options(compare_cmd, compare.context);
  compare_cmd->add_option("--from", compare.from)->capture_default_str();
  compare_cmd->add_option("--to", compare.to)->capture_default_str();
  compare_cmd->add_option("--step", compare.step)->capture_default_str();

  SampleCurriculumArgs sample;
  auto* sample_cmd =
      app.add_subcommand("sample-curriculum", "Print question ids kept by a sampler");
  sample_cmd->add_option("--strategy", sample.strategy)->capture_default_str();
  sample_cmd->add_option("--epoch", sample.epoch)->capture_default_str();
  sample_cmd->add_option("--of", sample.of, "Total epochs")->capture_default_str();
  sample_cmd->add_option("--bank", sample.bank, "bank.jsonl with extrinsic_difficulty")
      ->required();
  sample_cmd->add_option("--batch", sample.batch, "Sample a batch of this size");
  sample_cmd->add_option("--seed", sample.seed)->capture_default_str();
  sample_cmd->add_option("--easy-cut", sample.easy_cut)->capture_default_str();
  sample_cmd->add_option("--hard-cut", sample.hard_cut)->capture_default_str();
  sample_cmd->add_option("--p-max", sample.p_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*eval_cmd) return run_evaluate(eval);
    if (*gen_cmd) return run_gen_bank(gen);
    if (*score_cmd) return run_score_image(score);
    if (*shape_cmd) return run_shape_reward(shape);
    if (*compare_cmd) {
      if (compare.context.scheme != "fast") {
        std::cerr << "compare-rewards ignores --scheme\n";
      }
      return run_compare_rewards(compare);
    }
    if (*sample_cmd) return run_sample_curriculum(sample);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const CurriculumExhaustedError& e) {
    std::cerr << e.what() << '\n';
    return kCurriculumExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
