#include "crisis_pulse/classify/class_scores.hpp"

#include <algorithm>

namespace crisis_pulse::classify {

const std::vector<std::string>& behavioral_indicators() {
  static const std::vector<std::string> names{"sentiment", "emotion", "intent", "abuse", "sarcasm"};
  return names;
}

const std::vector<std::string>& binary_categories() {
  static const std::vector<std::string> names{"disaster", "humanitarian", "medical"};
  return names;
}

const std::vector<std::string>& labels_for(std::string_view indicator) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kLabels{
      {"sentiment", {"negative", "neutral", "positive"}},
      {"emotion", {"angry", "bored", "excited", "fear", "happy", "sad"}},
      {"intent", {"feedback", "marketing", "news", "query", "spam"}},
      {"abuse", {"abusive", "hate_speech", "neither"}},
      {"sarcasm", {"non_sarcastic", "sarcastic"}},
      {"phase",
       {"mitigation", "preparedness", "prevention_awareness", "recovery_essentials", "recovery_needs",
        "response"}},
  };
  static const std::vector<std::string> kBinary{"not_related", "related"};
  static const std::vector<std::string> kNone;
  if (indicator.substr(0, kBinaryPrefix.size()) == kBinaryPrefix) {
    const auto category = indicator.substr(kBinaryPrefix.size());
    const auto& cats = binary_categories();
    return std::find(cats.begin(), cats.end(), category) != cats.end() ? kBinary : kNone;
  }
  auto it = kLabels.find(indicator);
  return it == kLabels.end() ? kNone : it->second;
}

bool is_known_indicator(std::string_view indicator) { return !labels_for(indicator).empty(); }

ClassScores softened_scores(std::string_view indicator, const std::map<std::string, size_t>& hits) {
  ClassScores out;
  out.indicator = std::string(indicator);
  const auto& labels = labels_for(indicator);
  double total = 0.0;
  for (const auto& label : labels) {
    auto it = hits.find(label);
    const double smoothed = static_cast<double>(it == hits.end() ? 0 : it->second) + 1.0;
    out.scores[label] = smoothed;
    total += smoothed;
  }
  double best = -1.0;
  for (auto& [label, score] : out.scores) {
    score /= total;
    if (score > best) {  // map order: first maximum is the smallest label
      best = score;
      out.dominant = label;
    }
  }
  return out;
}

}  // namespace crisis_pulse::classify
