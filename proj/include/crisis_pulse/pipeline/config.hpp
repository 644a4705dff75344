#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/classify/filter.hpp"
#include "crisis_pulse/corpus/dictionary.hpp"
#include "crisis_pulse/lda/lda_model.hpp"

namespace crisis_pulse::pipeline {

enum class CorpusVariant { kBow, kTfidf };

struct PipelineConfig {
  // Inputs. Relative paths in a config file resolve against its directory.
  std::filesystem::path messages;
  std::filesystem::path synop;
  std::filesystem::path accounts;
  std::filesystem::path lexicons;
  std::filesystem::path stopwords;  // optional; built-in list when empty
  std::filesystem::path smileys;    // optional; built-in table when empty
  std::filesystem::path out_dir = "crisis-pulse-out";

  std::size_t min_token_length = 3;
  corpus::DictionaryParams dictionary;
  std::size_t top_terms = 20;
  std::uint64_t bigram_min_count = 2;
  std::size_t top_bigrams = 20;

  bool lda_enabled = true;
  std::size_t num_topics = 10;
  double alpha = lda::kDefaultAlpha;
  double beta = lda::kDefaultBeta;
  std::size_t iterations = lda::kDefaultIterations;
  std::size_t fold_iterations = lda::kDefaultFoldIterations;
  std::optional<std::uint64_t> seed;
  CorpusVariant variant = CorpusVariant::kBow;
  std::size_t terms_per_topic = 10;

  classify::ClassifierConfig classifier;

  std::chrono::seconds bucket{3600};
  std::vector<std::string> variables;  // defaults to all six climate variables
  std::vector<std::string> stations;   // empty = every decoded station
  int synop_ref_year = 1970;
  int synop_ref_month = 1;
};

// Keys accepted in the key=value file and through set_option().
const std::vector<std::string>& config_keys();

PipelineConfig default_config();

// '#' starts a comment; blank lines are ignored. Unknown keys and bad values
// throw ConfigError naming the line.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

// Applies one key=value pair; paths given here resolve against the working
// directory. Used for command-line overrides.
void set_option(PipelineConfig& config, std::string_view key, std::string_view value,
                const std::filesystem::path& base_dir = {});

// "baseline" | "remote=URL" | "remote=URL,fallback" ("remote:" also accepted).
classify::ClassifierConfig parse_classifier(std::string_view spec);

// CRISIS_PULSE_REMOTE replaces the remote URL when set and non-empty.
void apply_environment(PipelineConfig& config);

enum class Requirement { kMessages, kSynop, kLexicons, kAccounts };

// Checks that referenced inputs exist and that LDA has a seed. Throws
// ConfigError before any work starts.
void validate(const PipelineConfig& config, const std::vector<Requirement>& needs);

// Stable key=value rendering (input paths reduced to file names, output
// directory omitted) used for the MANIFEST hash.
std::string canonical_config(const PipelineConfig& config);

}  // namespace crisis_pulse::pipeline
