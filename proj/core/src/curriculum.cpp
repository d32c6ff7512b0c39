#include "fastgrpo/curriculum.hpp"

#include <string>
#include <utility>

#include "fastgrpo/error.hpp"
#include "fastgrpo/random.hpp"

namespace fastgrpo {

namespace {

double score_of(const Question& q) {
  if (!q.extrinsic_difficulty) {
    throw ArgumentError("question '" + q.id +
                        "' has no extrinsic difficulty; run a warmup pass first");
  }
  return *q.extrinsic_difficulty;
}

bool keeps(const CurriculumParams& p, double s_ext) {
  switch (p.strategy) {
    case SamplerKind::kSlowToFastBinary:
      return binary_slow_to_fast_filter(s_ext, p.epoch, p.total_epochs,
                                        p.easy_cut, p.hard_cut);
    case SamplerKind::kFastToSlow:
      return fast_to_slow_filter(s_ext, p.epoch, p.total_epochs, p.easy_cut,
                                 p.hard_cut);
    case SamplerKind::kDynamic:
      return dynamic_filter(s_ext, p.easy_cut, p.hard_cut);
    case SamplerKind::kSlowToFastContinuous:
    case SamplerKind::kNone:
      return true;
  }
  return true;
}

// Draws from a fixed index set: a random permutation first, then uniformly
// with replacement once the permutation is used up.
class Pool {
 public:
  explicit Pool(std::vector<std::size_t> items) : items_(std::move(items)) {}

  bool empty() const { return items_.empty(); }

  std::size_t draw(Rng& rng) {
    if (cursor_ < items_.size()) {
      const auto j = cursor_ + rng.index(items_.size() - cursor_);
      std::swap(items_[cursor_], items_[j]);
      return items_[cursor_++];
    }
    return items_[rng.index(items_.size())];
  }

 private:
  std::vector<std::size_t> items_;
  std::size_t cursor_ = 0;
};

[[noreturn]] void exhausted(const CurriculumParams& p) {
  throw CurriculumExhaustedError(
      "curriculum exhausted: strategy " + std::string(to_string(p.strategy)) +
      " kept no questions in epoch " + std::to_string(p.epoch) + " of " +
      std::to_string(p.total_epochs));
}

}  // namespace

bool is_early_epoch(int epoch, int total_epochs) {
  return epoch <= total_epochs / 2;
}

bool binary_slow_to_fast_filter(double s_ext, int epoch, int total_epochs,
                                double easy_cut, double hard_cut) {
  return is_early_epoch(epoch, total_epochs) ? s_ext > easy_cut
                                             : s_ext < hard_cut;
}

bool fast_to_slow_filter(double s_ext, int epoch, int total_epochs,
                         double easy_cut, double hard_cut) {
  return is_early_epoch(epoch, total_epochs) ? s_ext < hard_cut
                                             : s_ext > easy_cut;
}

bool dynamic_filter(double s_ext, double easy_cut, double hard_cut) {
  return easy_cut < s_ext && s_ext < hard_cut;
}

double continuous_easy_probability(int t, int total, double p_max) {
  if (total < 1) throw ArgumentError("total epochs must be >= 1");
  if (t < 0 || t > total) {
    throw ArgumentError("epoch " + std::to_string(t) + " outside [0, " +
                        std::to_string(total) + "]");
  }
  return p_max * static_cast<double>(t) / static_cast<double>(total);
}

CurriculumParams CurriculumParams::from_config(const TrainConfig& cfg, int epoch) {
  CurriculumParams p;
  p.strategy = cfg.sampler;
  p.epoch = epoch;
  p.total_epochs = cfg.epochs;
  p.easy_cut = cfg.easy_cut;
  p.hard_cut = cfg.hard_cut;
  p.p_max = cfg.p_max;
  return p;
}

std::vector<std::size_t> kept_indices(std::span<const Question> bank,
                                      const CurriculumParams& params) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (params.strategy == SamplerKind::kNone ||
        keeps(params, score_of(bank[i]))) {
      kept.push_back(i);
    }
  }
  return kept;
}

std::vector<std::size_t> sample_batch(std::span<const Question> bank,
                                      const CurriculumParams& params,
                                      std::size_t batch_size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> batch;
  batch.reserve(batch_size);

  if (params.strategy == SamplerKind::kSlowToFastContinuous) {
    std::vector<std::size_t> easy, rest;
    for (std::size_t i = 0; i < bank.size(); ++i) {
      (score_of(bank[i]) <= params.easy_cut ? easy : rest).push_back(i);
    }
    if (easy.empty() && rest.empty()) exhausted(params);
    const double p_easy =
        continuous_easy_probability(params.epoch, params.total_epochs, params.p_max);
    Pool easy_pool(std::move(easy));
    Pool rest_pool(std::move(rest));
    for (std::size_t k = 0; k < batch_size; ++k) {
      bool from_easy = rng.bernoulli(p_easy);
      if (from_easy && easy_pool.empty()) from_easy = false;
      if (!from_easy && rest_pool.empty()) from_easy = true;
      batch.push_back(from_easy ? easy_pool.draw(rng) : rest_pool.draw(rng));
    }
    return batch;
  }

  auto kept = kept_indices(bank, params);
  if (kept.empty()) exhausted(params);
  Pool pool(std::move(kept));
  for (std::size_t k = 0; k < batch_size; ++k) batch.push_back(pool.draw(rng));
  return batch;
}

}  // namespace fastgrpo
