#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fastgrpo/config.hpp"
#include "fastgrpo/types.hpp"

namespace fastgrpo {

// Epochs are 1-based. "Early" means epoch <= floor(total_epochs / 2).
bool is_early_epoch(int epoch, int total_epochs);

// Early: keep iff s_ext > easy_cut. Late: keep iff s_ext < hard_cut.
bool binary_slow_to_fast_filter(double s_ext, int epoch, int total_epochs,
                                double easy_cut, double hard_cut);

// Early: keep iff s_ext < hard_cut. Late: keep iff s_ext > easy_cut.
bool fast_to_slow_filter(double s_ext, int epoch, int total_epochs,
                         double easy_cut, double hard_cut);

// Keep iff easy_cut < s_ext < hard_cut.
bool dynamic_filter(double s_ext, double easy_cut, double hard_cut);

// p_max * t / T.
double continuous_easy_probability(int t, int total, double p_max);

struct CurriculumParams {
  SamplerKind strategy = SamplerKind::kNone;
  int epoch = 1;
  int total_epochs = 1;
  double easy_cut = 0.25;
  double hard_cut = 0.75;
  double p_max = 0.4;

  static CurriculumParams from_config(const TrainConfig& cfg, int epoch);
};

// Indices of the questions the strategy keeps this epoch, in bank order.
// The continuous sampler keeps everything (it reweights instead).
std::vector<std::size_t> kept_indices(std::span<const Question> bank,
                                      const CurriculumParams& params);

// Draws `batch_size` bank indices. Filtering strategies sample uniformly
// without replacement from the kept set, topping up with replacement when it
// is smaller than the batch. The continuous strategy fills each slot from the
// Easy pool (s_ext <= easy_cut) with probability p_easy(epoch) and from the
// rest otherwise. Throws CurriculumExhaustedError when nothing is kept.
std::vector<std::size_t> sample_batch(std::span<const Question> bank,
                                      const CurriculumParams& params,
                                      std::size_t batch_size, std::uint64_t seed);

}  // namespace fastgrpo
