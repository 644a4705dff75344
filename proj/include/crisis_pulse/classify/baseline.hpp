#pragma once

#include <map>
#include <string>
#include <string_view>

#include "crisis_pulse/classify/class_scores.hpp"
#include "crisis_pulse/classify/lexicon.hpp"
#include "crisis_pulse/text/preprocess.hpp"

namespace crisis_pulse::classify {

inline constexpr double kDefaultBinaryThreshold = 0.05;

// Lexicon baselines: pure functions of (doc, lexicon). All throw
// LexiconMissing when the lexicon they need was not loaded.

// p positive hits, n negative hits; scores (n+1, 1, p+1)/(p+n+3) over
// (negative, neutral, positive); dominant positive if p > n, negative if
// n > p, neutral otherwise.
ClassScores classify_sentiment(const text::TokenizedDoc& doc, const LexiconSet& lexicons);

struct BinaryDecision {
  bool related = false;
  double score = 0.0;  // fraction of doc tokens found in the category lexicon
};

// related iff score >= threshold; an empty doc scores 0.
BinaryDecision classify_binary(const text::TokenizedDoc& doc, std::string_view category,
                               const LexiconSet& lexicons, double threshold = kDefaultBinaryThreshold);

// One ClassScores for each of the five behavioral indicators.
std::map<std::string, ClassScores> behavioral_profile(const text::TokenizedDoc& doc,
                                                      const LexiconSet& lexicons);

// Softened counts over the six disaster-phase labels.
ClassScores phase_categorize(const text::TokenizedDoc& doc, const LexiconSet& lexicons);

}  // namespace crisis_pulse::classify
