#include <benchmark/benchmark.h>

#include <vector>

#include "fastgrpo/curriculum.hpp"
#include "fastgrpo/grpo.hpp"
#include "fastgrpo/harness.hpp"
#include "fastgrpo/image_complexity.hpp"
#include "fastgrpo/random.hpp"
#include "fastgrpo/toy_policy.hpp"

using namespace fastgrpo;

namespace {

void BM_ScoreImage(benchmark::State& state) {
  const auto img = tier_texture(Tier::kHard, 7, static_cast<std::size_t>(state.range(0)));
  const GlcmConfig cfg;
  const HistogramSoftmaxProvider provider;
  for (auto _ : state) benchmark::DoNotOptimize(score_image(img, cfg, provider));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ScoreImage)->Arg(64)->Arg(256);

void BM_SampleResponse(benchmark::State& state) {
  const toy::ToyPolicy policy(2.5, 24.0);
  const auto task = toy::SyntheticTask::defaults(Tier::kHard);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(toy::sample_response(policy, task, rng, 64, &policy));
}
BENCHMARK(BM_SampleResponse);

// A batch of 32 groups of 8 rollouts, as in one default training step.
struct Batch {
  toy::ToyPolicy policy{2.5, 24.0};
  std::vector<toy::SyntheticTask> tasks;
  std::vector<RolloutGroup> groups;
  std::vector<double> betas;

  Batch() {
    Rng rng(3);
    for (int g = 0; g < 32; ++g) {
      const auto task = toy::SyntheticTask::defaults(kAllTiers[g % 3]);
      tasks.push_back(task);
      RolloutGroup group;
      group.question_id = std::to_string(g);
      std::vector<double> rewards;
      for (int i = 0; i < 8; ++i) {
        group.rollouts.push_back(toy::sample_response(policy, task, rng, 64, &policy));
        rewards.push_back(group.rollouts.back().correct ? 1.0 : 0.0);
      }
      group.advantages = group_advantages(rewards);
      groups.push_back(std::move(group));
      betas.push_back(0.01);
    }
  }
};

void BM_Objective(benchmark::State& state) {
  const Batch batch;
  for (auto _ : state) benchmark::DoNotOptimize(grpo_objective(batch.groups, batch.betas, 0.2));
}
BENCHMARK(BM_Objective);

void BM_UpdateStep(benchmark::State& state) {
  Batch batch;
  for (auto _ : state) {
    toy::ToyPolicy policy = batch.policy;
    toy::ToyBatchPolicy adapter(policy, batch.tasks, 64);
    benchmark::DoNotOptimize(policy_update_step(adapter, batch.groups, batch.betas, 0.2, 0.5));
  }
}
BENCHMARK(BM_UpdateStep);

void BM_SampleBatch(benchmark::State& state) {
  auto bank = generate_question_bank(100, 0);
  Rng rng(5);
  for (auto& q : bank.questions) q.extrinsic_difficulty = rng.index(9) / 8.0;
  CurriculumParams p;
  p.strategy = SamplerKind::kSlowToFastContinuous;
  p.epoch = 5;
  p.total_epochs = 10;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_batch(bank.questions, p, 32, seed++));
}
BENCHMARK(BM_SampleBatch);

}  // namespace

BENCHMARK_MAIN();
