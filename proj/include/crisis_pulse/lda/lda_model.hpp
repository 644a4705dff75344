#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crisis_pulse/corpus/dictionary.hpp"

namespace crisis_pulse::lda {

inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultBeta = 0.01;
inline constexpr size_t kDefaultIterations = 1000;
inline constexpr size_t kDefaultFoldIterations = 100;

// Trained topic-word distributions plus the settings that produced them.
struct LdaModel {
  size_t num_topics = 0;
  size_t vocab_size = 0;
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  std::uint64_t seed = 0;
  size_t iterations = 0;
  std::vector<double> phi;  // num_topics x vocab_size, row-major; rows sum to 1

  std::span<const double> topic_row(size_t topic) const {
    return std::span<const double>(phi).subspan(topic * vocab_size, vocab_size);
  }

  // Text form; doubles are written shortest-round-trip so reading back is exact.
  std::string serialize() const;
  static LdaModel deserialize(std::string_view contents);

  friend bool operator==(const LdaModel&, const LdaModel&) = default;
};

struct TopicAssignment {
  size_t topic_id = 0;       // argmax of theta, lowest index on ties
  double probability = 0.0;  // theta[topic_id]
  std::vector<double> theta;
};

// The n heaviest entries of a topic row, weight descending then id ascending.
// Throws TopicOutOfRange.
std::vector<std::pair<corpus::TokenId, double>> top_terms(const LdaModel& model, size_t topic, size_t n);

}  // namespace crisis_pulse::lda
