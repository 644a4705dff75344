#include "crisis_pulse/classify/baseline.hpp"

#include "crisis_pulse/error.hpp"

namespace crisis_pulse::classify {
namespace {

const LabelLexicon& require_indicator(const LexiconSet& lexicons, std::string_view indicator) {
  auto it = lexicons.indicators.find(std::string(indicator));
  if (it == lexicons.indicators.end()) {
    throw LexiconMissing("no lexicon loaded for indicator '" + std::string(indicator) + "'");
  }
  return it->second;
}

std::map<std::string, size_t> count_hits(const text::TokenizedDoc& doc, const LabelLexicon& lex) {
  std::map<std::string, size_t> hits;
  for (const auto& [label, words] : lex.words) {
    size_t n = 0;
    for (const auto& t : doc.tokens) n += words.count(t);
    if (n) hits[label] = n;
  }
  return hits;
}

ClassScores generic_scores(const text::TokenizedDoc& doc, const LexiconSet& lexicons,
                           std::string_view indicator) {
  return softened_scores(indicator, count_hits(doc, require_indicator(lexicons, indicator)));
}

}  // namespace

ClassScores classify_sentiment(const text::TokenizedDoc& doc, const LexiconSet& lexicons) {
  const auto& lex = require_indicator(lexicons, kSentiment);
  if (!lex.words.count("positive") || !lex.words.count("negative")) {
    throw LexiconMissing("sentiment lexicon needs both positive and negative lists");
  }
  auto hits = count_hits(doc, lex);
  hits.erase("neutral");  // neutral carries no evidence of its own
  ClassScores out = softened_scores(kSentiment, hits);
  const size_t p = hits.count("positive") ? hits["positive"] : 0;
  const size_t n = hits.count("negative") ? hits["negative"] : 0;
  out.dominant = p > n ? "positive" : (n > p ? "negative" : "neutral");
  return out;
}

BinaryDecision classify_binary(const text::TokenizedDoc& doc, std::string_view category,
                               const LexiconSet& lexicons, double threshold) {
  auto it = lexicons.categories.find(std::string(category));
  if (it == lexicons.categories.end()) {
    throw LexiconMissing("no lexicon loaded for category '" + std::string(category) + "'");
  }
  if (doc.tokens.empty()) return {false, 0.0};
  size_t hits = 0;
  for (const auto& t : doc.tokens) hits += it->second.count(t);
  BinaryDecision d;
  d.score = static_cast<double>(hits) / static_cast<double>(doc.tokens.size());
  d.related = d.score >= threshold;
  return d;
}

std::map<std::string, ClassScores> behavioral_profile(const text::TokenizedDoc& doc,
                                                      const LexiconSet& lexicons) {
  std::map<std::string, ClassScores> out;
  for (const auto& indicator : behavioral_indicators()) {
    out[indicator] = indicator == kSentiment ? classify_sentiment(doc, lexicons)
                                             : generic_scores(doc, lexicons, indicator);
  }
  return out;
}

ClassScores phase_categorize(const text::TokenizedDoc& doc, const LexiconSet& lexicons) {
  return generic_scores(doc, lexicons, kPhase);
}

}  // namespace crisis_pulse::classify
