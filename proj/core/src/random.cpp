#include "fastgrpo/random.hpp"

#include <vector>

namespace fastgrpo {

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  // seed_seq's mixing algorithm is fixed by the standard.
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto v : path) push(v);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return Rng((static_cast<std::uint64_t>(out[1]) << 32) | out[0]);
}

std::uint64_t Rng::index(std::uint64_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace fastgrpo
