#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fastgrpo {

// mt19937_64 with draws computed from raw engine output, so streams are
// identical across standard libraries (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream derived from a seed and a path of indices (step, question, ...).
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t index(std::uint64_t n);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fastgrpo
