#include "fastgrpo/image_complexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

namespace {

struct Offset {
  long dr;
  long dc;
};

Offset offset_for(int radius, int orientation_deg) {
  const long d = radius;
  switch (orientation_deg) {
    case 0:
      return {0, d};
    case 45:
      return {-d, d};
    case 90:
      return {-d, 0};
    case 135:
      return {-d, -d};
    default:
      throw ArgumentError("orientation must be 0, 45, 90 or 135 degrees, got " +
                          std::to_string(orientation_deg));
  }
}

LevelMatrix crop(const LevelMatrix& m, std::size_t r0, std::size_t c0,
                 std::size_t rows, std::size_t cols) {
  LevelMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = m.at(r0 + r, c0 + c);
  }
  return out;
}

}  // namespace

void GlcmConfig::validate() const {
  if (gray_levels < 2) throw ArgumentError("gray_levels must be >= 2");
  if (gray_levels > 256) throw ArgumentError("gray_levels must be <= 256");
  if (patch_size < 2) throw ArgumentError("patch_size must be >= 2");
  if (radii.empty()) throw ArgumentError("radii must be nonempty");
  if (orientations.empty()) throw ArgumentError("orientations must be nonempty");
  for (int r : radii) {
    if (r < 1) throw ArgumentError("radii must be >= 1");
  }
  for (int o : orientations) offset_for(1, o);
}

LevelMatrix quantize_gray(const GrayImage& image, int levels) {
  if (levels < 2) throw ArgumentError("levels must be >= 2");
  if (levels > 256) throw ArgumentError("levels must be <= 256");
  LevelMatrix out(image.rows(), image.cols());
  for (std::size_t r = 0; r < image.rows(); ++r) {
    for (std::size_t c = 0; c < image.cols(); ++c) {
      out.at(r, c) = static_cast<std::uint16_t>(image.at(r, c) * levels / 256);
    }
  }
  return out;
}

Glcm glcm(const LevelMatrix& patch, int levels, int radius,
          int orientation_deg) {
  if (levels < 2) throw ArgumentError("levels must be >= 2");
  if (radius < 1) throw ArgumentError("radius must be >= 1");
  const auto [dr, dc] = offset_for(radius, orientation_deg);
  const auto n = static_cast<std::size_t>(levels);
  Glcm counts(n, n);

  const long rows = static_cast<long>(patch.rows());
  const long cols = static_cast<long>(patch.cols());
  std::size_t pairs = 0;
  for (long r = 0; r < rows; ++r) {
    const long r2 = r + dr;
    if (r2 < 0 || r2 >= rows) continue;
    for (long c = 0; c < cols; ++c) {
      const long c2 = c + dc;
      if (c2 < 0 || c2 >= cols) continue;
      const auto a = patch.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const auto b = patch.at(static_cast<std::size_t>(r2), static_cast<std::size_t>(c2));
      if (a >= n || b >= n) throw ArgumentError("level index out of range");
      counts.at(a, b) += 1.0;
      counts.at(b, a) += 1.0;
      ++pairs;
    }
  }
  if (pairs == 0) {
    throw DegenerateError("no pixel pair at radius " + std::to_string(radius) +
                          ", orientation " + std::to_string(orientation_deg) +
                          " in a " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " patch");
  }
  const double total = 2.0 * static_cast<double>(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) counts.at(i, j) /= total;
  }
  return counts;
}

double distribution_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  // -0.0 for a one-hot distribution.
  return h == 0.0 ? 0.0 : h;
}

double glcm_entropy(const Glcm& matrix) {
  return distribution_entropy(matrix.values());
}

double mean_patch_entropy(const GrayImage& image, const GlcmConfig& cfg) {
  cfg.validate();
  if (image.empty()) throw ArgumentError("empty image");
  const auto levels = quantize_gray(image, cfg.gray_levels);
  const auto step = static_cast<std::size_t>(cfg.patch_size);

  double sum = 0.0;
  std::size_t terms = 0;
  // Trailing partial tiles are kept; an image smaller than a tile is one patch.
  for (std::size_t r0 = 0; r0 < image.rows(); r0 += step) {
    for (std::size_t c0 = 0; c0 < image.cols(); c0 += step) {
      const auto patch = crop(levels, r0, c0, std::min(step, image.rows() - r0),
                              std::min(step, image.cols() - c0));
      for (int radius : cfg.radii) {
        for (int orientation : cfg.orientations) {
          try {
            sum += glcm_entropy(glcm(patch, cfg.gray_levels, radius, orientation));
            ++terms;
          } catch (const DegenerateError&) {
          }
        }
      }
    }
  }
  if (terms == 0) {
    throw DegenerateError("every patch/offset combination of a " +
                          std::to_string(image.rows()) + "x" +
                          std::to_string(image.cols()) + " image is degenerate");
  }
  return sum / static_cast<double>(terms);
}

std::vector<double> HistogramSoftmaxProvider::classify(
    const GrayImage& image) const {
  if (image.empty()) throw ArgumentError("empty image");
  std::array<double, kBins> counts{};
  for (auto v : image.pixels()) counts[v * kBins / 256] += 1.0;
  const double total = static_cast<double>(image.pixels().size());

  std::vector<double> logits(kBins);
  for (std::size_t i = 0; i < kBins; ++i) {
    logits[i] = counts[i] * static_cast<double>(kBins) / total;
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (auto& l : logits) {
    l = std::exp(l - max_logit);
    z += l;
  }
  for (auto& l : logits) l /= z;
  return logits;
}

double semantic_entropy(const GrayImage& image,
                        const SemanticEntropyProvider& provider) {
  const auto probs = provider.classify(image);
  if (probs.empty()) throw ProviderError("provider returned no classes");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ProviderError("provider returned a negative or non-finite probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ProviderError("provider probabilities sum to " + std::to_string(sum));
  }
  return distribution_entropy(probs);
}

ComplexityScores score_image(const GrayImage& image, const GlcmConfig& cfg,
                             const SemanticEntropyProvider& provider) {
  ComplexityScores s;
  s.texture_entropy = mean_patch_entropy(image, cfg);
  s.semantic_entropy = semantic_entropy(image, provider);
  s.raw = -(s.texture_entropy + s.semantic_entropy);

  const double texture_max = std::log(static_cast<double>(cfg.gray_levels) *
                                      static_cast<double>(cfg.gray_levels));
  const auto classes = provider.num_classes();
  const double semantic_part =
      classes > 1 ? s.semantic_entropy / std::log(static_cast<double>(classes))
                  : 0.0;
  s.normalized = std::clamp(
      0.5 * (s.texture_entropy / texture_max) + 0.5 * semantic_part, 0.0, 1.0);
  return s;
}

double image_complexity_raw(const GrayImage& image, const GlcmConfig& cfg,
                            const SemanticEntropyProvider& provider) {
  return score_image(image, cfg, provider).raw;
}

double image_complexity_norm(const GrayImage& image, const GlcmConfig& cfg,
                             const SemanticEntropyProvider& provider) {
  return score_image(image, cfg, provider).normalized;
}

}  // namespace fastgrpo
