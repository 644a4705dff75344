#include "crisis_pulse/pipeline/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/synop/climate_frame.hpp"
#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::pipeline {
namespace {

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) + "'");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  const auto v = parse_double(value);
  if (!v) throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  return *v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "off" || value == "0" || value == "no") return false;
  throw ConfigError("'" + std::string(key) + "' expects on/off, got '" + std::string(value) + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "messages",     "synop",          "accounts",         "lexicons",        "stopwords",   "smileys",
      "out",          "min_token_length", "min_docs",       "max_frac",        "keep_n",      "top_terms",
      "bigram_min_count", "top_bigrams", "lda",             "topics",          "alpha",       "beta",
      "iterations",   "fold_iterations", "seed",            "corpus",          "terms_per_topic",
      "classifier",   "remote_timeout_ms", "remote_max_in_flight", "binary_threshold", "bucket", "variables",
      "stations",     "synop_ref_month"};
  return keys;
}

PipelineConfig default_config() {
  PipelineConfig c;
  c.variables.assign(std::begin(synop::kClimateVariables), std::end(synop::kClimateVariables));
  return c;
}

classify::ClassifierConfig parse_classifier(std::string_view spec) {
  classify::ClassifierConfig out;
  spec = trim(spec);
  if (spec == "baseline") return out;
  if (spec.rfind("remote=", 0) != 0 && spec.rfind("remote:", 0) != 0) {
    throw ConfigError("classifier must be 'baseline' or 'remote=URL[,fallback]', got '" + std::string(spec) + "'");
  }
  std::string_view rest = spec.substr(7);
  out.mode = classify::ClassifierConfig::Mode::kRemote;
  if (const auto comma = rest.rfind(','); comma != std::string_view::npos) {
    if (rest.substr(comma + 1) != "fallback") {
      throw ConfigError("unknown classifier flag '" + std::string(rest.substr(comma + 1)) + "'");
    }
    out.fallback_to_baseline = true;
    rest = rest.substr(0, comma);
  }
  if (rest.empty()) throw ConfigError("remote classifier needs a URL");
  out.endpoint.url = std::string(rest);
  return out;
}

void set_option(PipelineConfig& c, std::string_view key, std::string_view raw, const std::filesystem::path& base) {
  const std::string_view value = trim(raw);
  if (key == "messages") {
    c.messages = resolve(base, value);
  } else if (key == "synop") {
    c.synop = resolve(base, value);
  } else if (key == "accounts") {
    c.accounts = resolve(base, value);
  } else if (key == "lexicons") {
    c.lexicons = resolve(base, value);
  } else if (key == "stopwords") {
    c.stopwords = resolve(base, value);
  } else if (key == "smileys") {
    c.smileys = resolve(base, value);
  } else if (key == "out") {
    c.out_dir = resolve(base, value);
  } else if (key == "min_token_length") {
    c.min_token_length = parse_unsigned<std::size_t>(key, value);
  } else if (key == "min_docs") {
    c.dictionary.min_docs = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "max_frac") {
    c.dictionary.max_frac = parse_real(key, value);
    if (!(c.dictionary.max_frac > 0.0 && c.dictionary.max_frac <= 1.0)) throw ConfigError("max_frac must be in (0, 1]");
  } else if (key == "keep_n") {
    c.dictionary.keep_n = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "top_terms") {
    c.top_terms = parse_unsigned<std::size_t>(key, value);
  } else if (key == "bigram_min_count") {
    c.bigram_min_count = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "top_bigrams") {
    c.top_bigrams = parse_unsigned<std::size_t>(key, value);
  } else if (key == "lda") {
    c.lda_enabled = parse_bool(key, value);
  } else if (key == "topics") {
    c.num_topics = parse_unsigned<std::size_t>(key, value);
    if (c.num_topics == 0) throw ConfigError("topics must be at least 1");
  } else if (key == "alpha") {
    c.alpha = parse_real(key, value);
    if (!(c.alpha > 0.0)) throw ConfigError("alpha must be positive");
  } else if (key == "beta") {
    c.beta = parse_real(key, value);
    if (!(c.beta > 0.0)) throw ConfigError("beta must be positive");
  } else if (key == "iterations") {
    c.iterations = parse_unsigned<std::size_t>(key, value);
  } else if (key == "fold_iterations") {
    c.fold_iterations = parse_unsigned<std::size_t>(key, value);
  } else if (key == "seed") {
    c.seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "corpus") {
    if (value == "bow") {
      c.variant = CorpusVariant::kBow;
    } else if (value == "tfidf") {
      c.variant = CorpusVariant::kTfidf;
    } else {
      throw ConfigError("corpus must be bow or tfidf, got '" + std::string(value) + "'");
    }
  } else if (key == "terms_per_topic") {
    c.terms_per_topic = parse_unsigned<std::size_t>(key, value);
  } else if (key == "classifier") {
    auto parsed = parse_classifier(value);
    parsed.endpoint.timeout = c.classifier.endpoint.timeout;
    parsed.endpoint.max_in_flight = c.classifier.endpoint.max_in_flight;
    parsed.binary_threshold = c.classifier.binary_threshold;
    c.classifier = parsed;
  } else if (key == "remote_timeout_ms") {
    c.classifier.endpoint.timeout = std::chrono::milliseconds(parse_unsigned<std::int64_t>(key, value));
  } else if (key == "remote_max_in_flight") {
    c.classifier.endpoint.max_in_flight = parse_unsigned<std::size_t>(key, value);
    if (c.classifier.endpoint.max_in_flight == 0) throw ConfigError("remote_max_in_flight must be at least 1");
  } else if (key == "binary_threshold") {
    c.classifier.binary_threshold = parse_real(key, value);
  } else if (key == "bucket") {
    const auto d = parse_duration(value);
    if (!d) throw ConfigError("bucket expects a duration such as 1h or 30m, got '" + std::string(value) + "'");
    c.bucket = *d;
  } else if (key == "variables") {
    auto vars = split_list(value);
    for (const auto& v : vars) {
      if (!synop::is_climate_variable(v)) throw ConfigError("unknown climate variable '" + v + "'");
    }
    c.variables = std::move(vars);
  } else if (key == "stations") {
    c.stations = split_list(value);
  } else if (key == "synop_ref_month") {
    // YYYY-MM
    if (value.size() != 7 || value[4] != '-') throw ConfigError("synop_ref_month expects YYYY-MM");
    c.synop_ref_year = parse_unsigned<int>(key, value.substr(0, 4));
    c.synop_ref_month = parse_unsigned<int>(key, value.substr(5, 2));
    if (c.synop_ref_month < 1 || c.synop_ref_month > 12) throw ConfigError("synop_ref_month: month out of range");
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  PipelineConfig c = default_config();
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(i + 1) + ": expected key = value");
    }
    try {
      set_option(c, trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
  return parse_config(read_file(path), path.parent_path());
}

void apply_environment(PipelineConfig& config) {
  if (const char* url = std::getenv("CRISIS_PULSE_REMOTE"); url != nullptr && *url != '\0') {
    config.classifier.endpoint.url = url;
  }
}

void validate(const PipelineConfig& c, const std::vector<Requirement>& needs) {
  const auto require = [](const std::filesystem::path& p, const char* key, bool directory) {
    if (p.empty()) throw ConfigError(std::string("'") + key + "' is not set");
    if (directory ? !std::filesystem::is_directory(p) : !std::filesystem::is_regular_file(p)) {
      throw ConfigError(std::string("'") + key + "' does not exist: " + p.string());
    }
  };
  for (Requirement r : needs) {
    switch (r) {
      case Requirement::kMessages:
        require(c.messages, "messages", false);
        break;
      case Requirement::kSynop:
        require(c.synop, "synop", false);
        break;
      case Requirement::kLexicons:
        require(c.lexicons, "lexicons", true);
        break;
      case Requirement::kAccounts:
        if (!c.accounts.empty()) require(c.accounts, "accounts", false);
        break;
    }
  }
  if (!c.stopwords.empty()) require(c.stopwords, "stopwords", false);
  if (!c.smileys.empty()) require(c.smileys, "smileys", false);
  if (c.lda_enabled && !c.seed) throw ConfigError("'seed' is required when LDA is enabled");
  if (c.classifier.mode == classify::ClassifierConfig::Mode::kRemote && c.classifier.endpoint.url.empty()) {
    throw ConfigError("remote classifier needs a URL");
  }
}

std::string canonical_config(const PipelineConfig& c) {
  const auto name = [](const std::filesystem::path& p) { return p.filename().string(); };
  std::map<std::string, std::string> kv;
  kv["messages"] = name(c.messages);
  kv["synop"] = name(c.synop);
  kv["accounts"] = name(c.accounts);
  kv["lexicons"] = name(c.lexicons);
  kv["stopwords"] = name(c.stopwords);
  kv["smileys"] = name(c.smileys);
  kv["min_token_length"] = std::to_string(c.min_token_length);
  kv["min_docs"] = std::to_string(c.dictionary.min_docs);
  kv["max_frac"] = format_double(c.dictionary.max_frac);
  kv["keep_n"] = std::to_string(c.dictionary.keep_n);
  kv["top_terms"] = std::to_string(c.top_terms);
  kv["bigram_min_count"] = std::to_string(c.bigram_min_count);
  kv["top_bigrams"] = std::to_string(c.top_bigrams);
  kv["lda"] = c.lda_enabled ? "on" : "off";
  kv["topics"] = std::to_string(c.num_topics);
  kv["alpha"] = format_double(c.alpha);
  kv["beta"] = format_double(c.beta);
  kv["iterations"] = std::to_string(c.iterations);
  kv["fold_iterations"] = std::to_string(c.fold_iterations);
  kv["seed"] = c.seed ? std::to_string(*c.seed) : "";
  kv["corpus"] = c.variant == CorpusVariant::kBow ? "bow" : "tfidf";
  kv["terms_per_topic"] = std::to_string(c.terms_per_topic);
  std::string classifier = "baseline";
  if (c.classifier.mode == classify::ClassifierConfig::Mode::kRemote) {
    classifier = "remote=" + c.classifier.endpoint.url + (c.classifier.fallback_to_baseline ? ",fallback" : "");
  }
  kv["classifier"] = classifier;
  kv["remote_timeout_ms"] = std::to_string(c.classifier.endpoint.timeout.count());
  kv["remote_max_in_flight"] = std::to_string(c.classifier.endpoint.max_in_flight);
  kv["binary_threshold"] = format_double(c.classifier.binary_threshold);
  kv["bucket"] = std::to_string(c.bucket.count()) + "s";
  std::string vars, stations;
  for (const auto& v : c.variables) vars += (vars.empty() ? "" : ",") + v;
  for (const auto& s : c.stations) stations += (stations.empty() ? "" : ",") + s;
  kv["variables"] = vars;
  kv["stations"] = stations;
  char month[16];
  std::snprintf(month, sizeof month, "%04d-%02d", c.synop_ref_year, c.synop_ref_month);
  kv["synop_ref_month"] = month;
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace crisis_pulse::pipeline
