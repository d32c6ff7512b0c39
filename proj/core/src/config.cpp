#include "fastgrpo/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fastgrpo/error.hpp"

namespace fastgrpo {

namespace {

constexpr std::pair<RewardScheme, std::string_view> kSchemeNames[] = {
    {RewardScheme::kFast, "fast"},
    {RewardScheme::kKimi, "kimi"},
    {RewardScheme::kCosFn, "cosfn"},
    {RewardScheme::kDast, "dast"},
    {RewardScheme::kPilotLengthy, "pilot_lengthy"},
    {RewardScheme::kPilotShort, "pilot_short"},
    {RewardScheme::kNone, "none"},
};

constexpr std::pair<SamplerKind, std::string_view> kSamplerNames[] = {
    {SamplerKind::kSlowToFastBinary, "slow_to_fast_binary"},
    {SamplerKind::kSlowToFastContinuous, "slow_to_fast_continuous"},
    {SamplerKind::kFastToSlow, "fast_to_slow"},
    {SamplerKind::kDynamic, "dynamic"},
    {SamplerKind::kNone, "none"},
};

constexpr std::pair<DifficultyCombine, std::string_view> kCombineNames[] = {
    {DifficultyCombine::kMultiplicative, "multiplicative"},
    {DifficultyCombine::kWeightedSum, "weighted_sum"},
};

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E v) {
  for (const auto& [e, name] : table) {
    if (e == v) return name;
  }
  return "unknown";
}

template <typename E, std::size_t N>
E parse_enum(const std::pair<E, std::string_view> (&table)[N],
             std::string_view name, const char* what) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + std::string(name) +
                    "'");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// "value ; note" -> "value". A ';' or '#' only starts a comment after blank space.
std::string_view strip_inline_comment(std::string_view s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == ';' || s[i] == '#') && (s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return s.substr(0, i);
    }
  }
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(RewardScheme s) { return name_of(kSchemeNames, s); }
std::string_view to_string(SamplerKind s) { return name_of(kSamplerNames, s); }
std::string_view to_string(DifficultyCombine c) {
  return name_of(kCombineNames, c);
}

RewardScheme parse_reward_scheme(std::string_view name) {
  return parse_enum(kSchemeNames, name, "reward scheme");
}
SamplerKind parse_sampler(std::string_view name) {
  return parse_enum(kSamplerNames, name, "sampler");
}
DifficultyCombine parse_difficulty_combine(std::string_view name) {
  return parse_enum(kCombineNames, name, "difficulty combine mode");
}

TrainConfig TrainConfig::full_scale() {
  TrainConfig cfg;
  cfg.batch_size = 512;
  cfg.learning_rate = 1e-6;
  cfg.n_per_tier = 6000;
  cfg.l_max = 4096;
  return cfg;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(group_size >= 2, "group_size must be >= 2");
  require(epochs >= 1, "epochs must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(steps_per_epoch >= 0, "steps_per_epoch must be >= 0");
  require(beta_min > 0.0 && beta_min <= beta_max,
          "need 0 < beta_min <= beta_max");
  require(clip_eps > 0.0 && clip_eps < 1.0, "need 0 < clip_eps < 1");
  require(p_max >= 0.0 && p_max <= 1.0, "need 0 <= p_max <= 1");
  require(alpha >= 0.0 && alpha <= 1.0, "need 0 <= alpha <= 1");
  require(easy_cut < hard_cut, "need easy_cut < hard_cut");
  require(difficulty_percentile > 0.0 && difficulty_percentile <= 1.0,
          "need 0 < difficulty_percentile <= 1");
  require(learning_rate >= 0.0, "learning_rate must be >= 0");
  require(n_per_tier >= 1, "n_per_tier must be >= 1");
  require(l_max >= 1, "l_max must be >= 1");
  require(eval_group_size >= 1, "eval_group_size must be >= 1");
}

void TrainConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "group_size") group_size = parse_number<int>(key, value);
  else if (key == "epochs") epochs = parse_number<int>(key, value);
  else if (key == "batch_size") batch_size = parse_number<int>(key, value);
  else if (key == "steps_per_epoch") steps_per_epoch = parse_number<int>(key, value);
  else if (key == "clip_eps") clip_eps = parse_number<double>(key, value);
  else if (key == "beta_min") beta_min = parse_number<double>(key, value);
  else if (key == "beta_max") beta_max = parse_number<double>(key, value);
  else if (key == "lambda_f") lambda_f = parse_number<double>(key, value);
  else if (key == "lambda_t") lambda_t = parse_number<double>(key, value);
  else if (key == "difficulty_percentile") difficulty_percentile = parse_number<double>(key, value);
  else if (key == "easy_cut") easy_cut = parse_number<double>(key, value);
  else if (key == "hard_cut") hard_cut = parse_number<double>(key, value);
  else if (key == "p_max") p_max = parse_number<double>(key, value);
  else if (key == "learning_rate") learning_rate = parse_number<double>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "reward_scheme") reward_scheme = parse_reward_scheme(value);
  else if (key == "sampler") sampler = parse_sampler(value);
  else if (key == "difficulty_combine") difficulty_combine = parse_difficulty_combine(value);
  else if (key == "alpha") alpha = parse_number<double>(key, value);
  else if (key == "n_per_tier") n_per_tier = parse_number<int>(key, value);
  else if (key == "l_max") l_max = parse_number<int>(key, value);
  else if (key == "init_continue_logit") init_continue_logit = parse_number<double>(key, value);
  else if (key == "init_care_logit") init_care_logit = parse_number<double>(key, value);
  else if (key == "eval_group_size") eval_group_size = parse_number<int>(key, value);
  else if (key == "bank") bank = std::string(value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::map<std::string, std::string> TrainConfig::to_map() const {
  return {
      {"group_size", std::to_string(group_size)},
      {"epochs", std::to_string(epochs)},
      {"batch_size", std::to_string(batch_size)},
      {"steps_per_epoch", std::to_string(steps_per_epoch)},
      {"clip_eps", format_double(clip_eps)},
      {"beta_min", format_double(beta_min)},
      {"beta_max", format_double(beta_max)},
      {"lambda_f", format_double(lambda_f)},
      {"lambda_t", format_double(lambda_t)},
      {"difficulty_percentile", format_double(difficulty_percentile)},
      {"easy_cut", format_double(easy_cut)},
      {"hard_cut", format_double(hard_cut)},
      {"p_max", format_double(p_max)},
      {"learning_rate", format_double(learning_rate)},
      {"seed", std::to_string(seed)},
      {"reward_scheme", std::string(to_string(reward_scheme))},
      {"sampler", std::string(to_string(sampler))},
      {"difficulty_combine", std::string(to_string(difficulty_combine))},
      {"alpha", format_double(alpha)},
      {"n_per_tier", std::to_string(n_per_tier)},
      {"l_max", std::to_string(l_max)},
      {"init_continue_logit", format_double(init_continue_logit)},
      {"init_care_logit", format_double(init_care_logit)},
      {"eval_group_size", std::to_string(eval_group_size)},
      {"bank", bank},
  };
}

TrainConfig load_config(const std::filesystem::path& path) {
  return load_config(path, TrainConfig{});
}

TrainConfig load_config(const std::filesystem::path& path, TrainConfig cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      // Empty sections and empty values are indistinguishable here; both keep
      // the default.
      const auto value = trim(strip_inline_comment(node.data()));
      if (!value.empty()) cfg.set(key, value);
      continue;
    }
    for (const auto& [sub_key, sub_node] : node) {
      cfg.set(sub_key, strip_inline_comment(sub_node.data()));
    }
  }
  cfg.validate();
  return cfg;
}

void save_config(const std::filesystem::path& path, const TrainConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "[train]\n";
  for (const auto& [k, v] : cfg.to_map()) out << k << " = " << v << '\n';
}

}  // namespace fastgrpo
