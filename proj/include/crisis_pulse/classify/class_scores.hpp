#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crisis_pulse::classify {

inline constexpr std::string_view kSentiment = "sentiment";
inline constexpr std::string_view kEmotion = "emotion";
inline constexpr std::string_view kIntent = "intent";
inline constexpr std::string_view kAbuse = "abuse";
inline constexpr std::string_view kSarcasm = "sarcasm";
inline constexpr std::string_view kPhase = "phase";
inline constexpr std::string_view kBinaryPrefix = "binary:";

// The five behavioral indicators, in report order.
const std::vector<std::string>& behavioral_indicators();
// disaster, humanitarian, medical
const std::vector<std::string>& binary_categories();

// Closed label set of an indicator, sorted. "binary:<category>" indicators use
// {not_related, related}. Empty for unknown indicators.
const std::vector<std::string>& labels_for(std::string_view indicator);
bool is_known_indicator(std::string_view indicator);

struct ClassScores {
  std::string indicator;
  std::map<std::string, double> scores;  // every label of the indicator, each in [0, 1], summing to 1
  std::string dominant;

  friend bool operator==(const ClassScores&, const ClassScores&) = default;
};

// Add-one smoothing over the label set: score_l = (hits_l + 1) / sum(hits + 1).
// dominant is the argmax with the lexicographically smallest label on ties.
ClassScores softened_scores(std::string_view indicator, const std::map<std::string, size_t>& hits);

}  // namespace crisis_pulse::classify
