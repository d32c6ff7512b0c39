#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fastgrpo/types.hpp"

namespace fastgrpo {

// Binary PGM (P5), maxval 255.
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

// Question bank: one JSON object per line,
//   {"id": str, "image": "relative/path.pgm", "answer": str}
// or with the image inline as "image": {"rows": n, "cols": m, "pixels": [...]}.
// Optional keys: "tier", "image_complexity", "extrinsic_difficulty".
// Image paths are resolved against the bank file's directory.
std::vector<Question> parse_question_bank(const std::filesystem::path& path);

// Writes bank.jsonl lines plus one PGM per question into `dir`.
void write_question_bank(const std::filesystem::path& dir,
                         std::span<const Question> bank);

// One line of the rollout log.
struct RolloutRecord {
  std::string question_id;
  std::size_t length = 0;
  bool correct = false;
  bool format_ok = false;
  RewardBreakdown reward;
  double advantage = 0.0;

  bool operator==(const RolloutRecord&) const = default;
};

std::vector<RolloutRecord> flatten(std::span<const RolloutGroup> groups);

// Truncates `path` and writes one JSON line per rollout.
void write_rollout_log(const std::filesystem::path& path,
                       std::span<const RolloutGroup> groups);

// Appends to an already open stream; used by the trainer, which logs per step.
void append_rollout_log(std::ostream& out,
                        std::span<const RolloutGroup> groups);

std::vector<RolloutRecord> read_rollout_log(const std::filesystem::path& path);

}  // namespace fastgrpo
