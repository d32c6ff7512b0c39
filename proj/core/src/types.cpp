#include "fastgrpo/types.hpp"

#include <string>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::kEasy:
      return "easy";
    case Tier::kMedium:
      return "medium";
    case Tier::kHard:
      return "hard";
  }
  return "unknown";
}

Tier parse_tier(std::string_view name) {
  if (name == "easy") return Tier::kEasy;
  if (name == "medium") return Tier::kMedium;
  if (name == "hard") return Tier::kHard;
  throw ArgumentError("unknown tier '" + std::string(name) + "'");
}

GrayImage::GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill)
    : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {}

GrayImage::GrayImage(std::size_t rows, std::size_t cols,
                     std::vector<std::uint8_t> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (pixels_.size() != rows_ * cols_) {
    throw ArgumentError("image has " + std::to_string(pixels_.size()) +
                        " pixels, expected " + std::to_string(rows_ * cols_));
  }
}

GrayImage GrayImage::transposed() const {
  GrayImage out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

void Question::validate() const {
  if (image.empty()) throw ArgumentError("question '" + id + "': empty image");
  if (extrinsic_difficulty &&
      !(*extrinsic_difficulty >= 0.0 && *extrinsic_difficulty <= 1.0)) {
    throw ArgumentError("question '" + id +
                        "': extrinsic difficulty outside [0,1]");
  }
}

void Rollout::validate() const {
  const auto n = tokens.size();
  if (logp_new.size() != n || logp_old.size() != n || logp_ref.size() != n) {
    throw ArgumentError("rollout log-probability sequences differ in length");
  }
  if (length != n) throw ArgumentError("rollout length != token count");
  for (const auto* seq : {&logp_new, &logp_old, &logp_ref}) {
    for (double lp : *seq) {
      if (!(lp <= 0.0)) {
        throw ArgumentError("rollout log-probability is positive or NaN");
      }
    }
  }
}

void RolloutGroup::validate() const {
  const auto g = rollouts.size();
  if (g < 2) throw ArgumentError("group size must be at least 2");
  if (rewards.size() != g || advantages.size() != g) {
    throw ArgumentError("group '" + question_id +
                        "': rewards/advantages size mismatch");
  }
  if (!breakdowns.empty() && breakdowns.size() != g) {
    throw ArgumentError("group '" + question_id +
                        "': reward breakdown size mismatch");
  }
  for (const auto& r : rollouts) r.validate();
}

}  // namespace fastgrpo
