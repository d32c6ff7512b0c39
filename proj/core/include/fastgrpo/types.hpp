#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fastgrpo {

enum class Tier : std::uint8_t { kEasy = 0, kMedium = 1, kHard = 2 };

inline constexpr std::size_t kNumTiers = 3;
inline constexpr Tier kAllTiers[kNumTiers] = {Tier::kEasy, Tier::kMedium,
                                              Tier::kHard};

std::string_view to_string(Tier tier);
Tier parse_tier(std::string_view name);

// Row-major 8-bit grayscale image.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill = 0);
  GrayImage(std::size_t rows, std::size_t cols,
            std::vector<std::uint8_t> pixels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return pixels_[r * cols_ + c];
  }
  std::uint8_t& at(std::size_t r, std::size_t c) {
    return pixels_[r * cols_ + c];
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  GrayImage transposed() const;

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> pixels_;
};

struct Question {
  std::string id;
  GrayImage image;
  std::string answer;
  // Cached normalized image complexity in [0,1].
  std::optional<double> image_complexity;
  // Latest 1 - pass@k for this question.
  std::optional<double> extrinsic_difficulty;
  // Synthetic-task tier; only present for generated banks.
  std::optional<Tier> tier;

  // Throws ArgumentError when an invariant is broken.
  void validate() const;
};

using TokenId = std::int32_t;

struct Rollout {
  std::vector<TokenId> tokens;
  std::vector<double> logp_new;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;
  std::size_t length = 0;
  bool correct = false;
  bool format_ok = false;

  void validate() const;
};

struct RewardBreakdown {
  double r_a = 0.0;
  double r_f = 0.0;
  double r_t = 0.0;
  double total = 0.0;

  bool operator==(const RewardBreakdown&) const = default;
};

struct RolloutGroup {
  std::string question_id;
  std::vector<Rollout> rollouts;
  std::vector<RewardBreakdown> breakdowns;
  std::vector<double> rewards;
  std::vector<double> advantages;

  std::size_t size() const noexcept { return rollouts.size(); }
  // Checks |rollouts| = |rewards| = |advantages| >= 2 and each rollout.
  void validate() const;
};

}  // namespace fastgrpo
