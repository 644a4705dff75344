#include "crisis_pulse/classify/lexicon.hpp"

#include "crisis_pulse/classify/class_scores.hpp"
#include "crisis_pulse/text/normalize.hpp"
#include "crisis_pulse/text/porter_stemmer.hpp"
#include "crisis_pulse/text/preprocess.hpp"
#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::classify {

WordSet parse_word_list(std::string_view contents) {
  static const text::StopwordSet kNoStopwords;
  WordSet words;
  for (const auto& raw : split_lines(contents)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    for (const auto& token : text::tokenize(text::normalize(line), kNoStopwords, 1)) {
      words.insert(text::stem(token));
    }
  }
  return words;
}

LexiconSet LexiconSet::load(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  LexiconSet set;
  std::vector<std::string> indicators = behavioral_indicators();
  indicators.emplace_back(kPhase);
  for (const auto& indicator : indicators) {
    const fs::path dir = root / indicator;
    if (!fs::is_directory(dir)) continue;
    LabelLexicon lex;
    for (const auto& label : labels_for(indicator)) {
      const fs::path file = dir / (label + ".txt");
      if (fs::exists(file)) lex.words[label] = parse_word_list(read_file(file));
    }
    set.indicators.emplace(indicator, std::move(lex));
  }
  for (const auto& category : binary_categories()) {
    const fs::path file = root / "binary" / (category + ".txt");
    if (fs::exists(file)) set.categories[category] = parse_word_list(read_file(file));
  }
  return set;
}

}  // namespace crisis_pulse::classify
