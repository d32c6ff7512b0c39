#include "fastgrpo/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_header_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

std::size_t parse_header_number(std::istream& in, const fs::path& path,
                                const char* what) {
  const auto token = next_header_token(in);
  std::size_t value = 0;
  try {
    std::size_t used = 0;
    value = std::stoul(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw IoError(path.string(), std::string("bad PGM ") + what + " '" +
                                     token + "'");
  }
  return value;
}

GrayImage inline_image(const json& rec, std::size_t line) {
  const auto rows = rec.at("rows").get<std::size_t>();
  const auto cols = rec.at("cols").get<std::size_t>();
  if (rows == 0 || cols == 0) throw ParseError(line, "empty image");
  const auto& px = rec.at("pixels");
  if (!px.is_array() || px.size() != rows * cols) {
    throw ParseError(line, "pixel count does not match rows*cols");
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(px.size());
  for (const auto& v : px) {
    const int value = v.get<int>();
    if (value < 0 || value > 255) throw ParseError(line, "pixel out of range");
    pixels.push_back(static_cast<std::uint8_t>(value));
  }
  return GrayImage(rows, cols, std::move(pixels));
}

json record_to_json(const RolloutRecord& r) {
  return json{{"question_id", r.question_id},
              {"length", r.length},
              {"correct", r.correct},
              {"format_ok", r.format_ok},
              {"r_a", r.reward.r_a},
              {"r_f", r.reward.r_f},
              {"r_t", r.reward.r_t},
              {"total", r.reward.total},
              {"advantage", r.advantage}};
}

}  // namespace

GrayImage read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open image");
  if (next_header_token(in) != "P5") {
    throw IoError(path.string(), "not a binary PGM (P5)");
  }
  const auto cols = parse_header_number(in, path, "width");
  const auto rows = parse_header_number(in, path, "height");
  const auto maxval = parse_header_number(in, path, "maxval");
  if (maxval != 255) throw IoError(path.string(), "maxval must be 255");
  // next_header_token consumed exactly one whitespace byte after maxval.
  std::vector<std::uint8_t> pixels(rows * cols);
  in.read(reinterpret_cast<char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw IoError(path.string(), "truncated pixel data");
  }
  return GrayImage(rows, cols, std::move(pixels));
}

void write_pgm(const fs::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  const auto px = image.pixels();
  out.write(reinterpret_cast<const char*>(px.data()),
            static_cast<std::streamsize>(px.size()));
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<Question> parse_question_bank(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open question bank");
  const auto base = path.parent_path();

  std::vector<Question> bank;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;

    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(line, "record is not an object");

    Question q;
    try {
      q.id = rec.at("id").get<std::string>();
      q.answer = rec.at("answer").get<std::string>();
      if (!rec.contains("image")) throw ParseError(line, "record has no image");
      const auto& image = rec.at("image");
      if (image.is_object()) {
        q.image = inline_image(image, line);
      } else {
        q.image = read_pgm(base / image.get<std::string>());
        if (q.image.empty()) throw ParseError(line, "empty image");
      }
      if (rec.contains("tier")) q.tier = parse_tier(rec["tier"].get<std::string>());
      if (rec.contains("image_complexity")) {
        q.image_complexity = rec["image_complexity"].get<double>();
      }
      if (rec.contains("extrinsic_difficulty")) {
        q.extrinsic_difficulty = rec["extrinsic_difficulty"].get<double>();
      }
    } catch (const json::exception& e) {
      throw ParseError(line, e.what());
    } catch (const ArgumentError& e) {
      throw ParseError(line, e.what());
    }
    try {
      q.validate();
    } catch (const ArgumentError& e) {
      throw ParseError(line, e.what());
    }
    bank.push_back(std::move(q));
  }
  return bank;
}

void write_question_bank(const fs::path& dir, std::span<const Question> bank) {
  std::error_code ec;
  fs::create_directories(dir / "images", ec);
  if (ec) throw IoError(dir.string(), ec.message());

  std::ofstream out(dir / "bank.jsonl");
  if (!out) throw IoError((dir / "bank.jsonl").string(), "cannot open");
  for (const auto& q : bank) {
    const auto rel = fs::path("images") / (q.id + ".pgm");
    write_pgm(dir / rel, q.image);
    json rec{{"id", q.id}, {"image", rel.generic_string()}, {"answer", q.answer}};
    if (q.tier) rec["tier"] = std::string(to_string(*q.tier));
    if (q.image_complexity) rec["image_complexity"] = *q.image_complexity;
    if (q.extrinsic_difficulty) {
      rec["extrinsic_difficulty"] = *q.extrinsic_difficulty;
    }
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError((dir / "bank.jsonl").string(), "write failed");
}

std::vector<RolloutRecord> flatten(std::span<const RolloutGroup> groups) {
  std::vector<RolloutRecord> records;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.rollouts.size(); ++i) {
      RolloutRecord r;
      r.question_id = g.question_id;
      r.length = g.rollouts[i].length;
      r.correct = g.rollouts[i].correct;
      r.format_ok = g.rollouts[i].format_ok;
      if (i < g.breakdowns.size()) {
        r.reward = g.breakdowns[i];
      } else if (i < g.rewards.size()) {
        r.reward.total = g.rewards[i];
      }
      if (i < g.advantages.size()) r.advantage = g.advantages[i];
      records.push_back(std::move(r));
    }
  }
  return records;
}

void append_rollout_log(std::ostream& out,
                        std::span<const RolloutGroup> groups) {
  for (const auto& r : flatten(groups)) out << record_to_json(r).dump() << '\n';
}

void write_rollout_log(const fs::path& path,
                       std::span<const RolloutGroup> groups) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  append_rollout_log(out, groups);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<RolloutRecord> read_rollout_log(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open rollout log");
  std::vector<RolloutRecord> records;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    try {
      const auto j = json::parse(text);
      RolloutRecord r;
      r.question_id = j.at("question_id").get<std::string>();
      r.length = j.at("length").get<std::size_t>();
      r.correct = j.at("correct").get<bool>();
      r.format_ok = j.at("format_ok").get<bool>();
      r.reward.r_a = j.at("r_a").get<double>();
      r.reward.r_f = j.at("r_f").get<double>();
      r.reward.r_t = j.at("r_t").get<double>();
      r.reward.total = j.at("total").get<double>();
      r.advantage = j.at("advantage").get<double>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  return records;
}

}  // namespace fastgrpo
