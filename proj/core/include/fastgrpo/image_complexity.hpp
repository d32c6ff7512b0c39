#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fastgrpo/types.hpp"

namespace fastgrpo {

// Pixel offsets are taken MATLAB-style: orientation 45 degrees at radius d is
// the chessboard step (-d, +d), not a rounded Euclidean one.
struct GlcmConfig {
  int gray_levels = 64;
  int patch_size = 64;
  std::vector<int> radii = {1, 2, 3, 4};
  // Degrees; each must be one of 0, 45, 90, 135.
  std::vector<int> orientations = {0, 45, 90, 135};

  void validate() const;
};

// Dense row-major grid: quantized levels of a patch, or a GLCM.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const T> values() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using LevelMatrix = Grid<std::uint16_t>;
using Glcm = Grid<double>;

// floor(v * levels / 256) per pixel.
LevelMatrix quantize_gray(const GrayImage& image, int levels);

// Symmetric co-occurrence probabilities of `patch` (levels x levels).
// Throws DegenerateError if no offset pair fits.
Glcm glcm(const LevelMatrix& patch, int levels, int radius, int orientation_deg);

// -sum p ln p over nonzero entries, in nats.
double glcm_entropy(const Glcm& matrix);
double distribution_entropy(std::span<const double> probs);

double mean_patch_entropy(const GrayImage& image, const GlcmConfig& cfg);

class SemanticEntropyProvider {
 public:
  virtual ~SemanticEntropyProvider() = default;
  virtual std::vector<double> classify(const GrayImage& image) const = 0;
  virtual std::size_t num_classes() const = 0;
};

// Softmax over a 16-bin intensity histogram. Logits are bin masses in units
// of the uniform bin mass (count * 16 / total), temperature 1, so a flat
// histogram maps to the uniform distribution and a constant image to a
// near one-hot one.
class HistogramSoftmaxProvider final : public SemanticEntropyProvider {
 public:
  static constexpr std::size_t kBins = 16;

  std::vector<double> classify(const GrayImage& image) const override;
  std::size_t num_classes() const override { return kBins; }
};

// Entropy of the provider's distribution; ProviderError if it is not one.
double semantic_entropy(const GrayImage& image,
                        const SemanticEntropyProvider& provider);

// The literal, nonpositive score: -(mean patch entropy + semantic entropy).
double image_complexity_raw(const GrayImage& image, const GlcmConfig& cfg,
                            const SemanticEntropyProvider& provider);

// 0.5 * texture / ln(levels^2) + 0.5 * semantic / ln(N), clamped to [0,1].
// Increases with visual complexity; this is the score used for difficulty.
double image_complexity_norm(const GrayImage& image, const GlcmConfig& cfg,
                             const SemanticEntropyProvider& provider);

struct ComplexityScores {
  double texture_entropy = 0.0;
  double semantic_entropy = 0.0;
  double raw = 0.0;
  double normalized = 0.0;
};

// Both conventions from a single pass over the image.
ComplexityScores score_image(const GrayImage& image, const GlcmConfig& cfg,
                             const SemanticEntropyProvider& provider);

}  // namespace fastgrpo
