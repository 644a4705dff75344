#include "crisis_pulse/text/preprocess.hpp"

#include "crisis_pulse/text/porter_stemmer.hpp"
#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::text {

const StopwordSet& default_stopwords() {
  static const StopwordSet words{
      "a",          "about",    "above",    "after",   "again",   "against",    "ain",      "all",
      "am",         "an",       "and",      "any",     "are",     "aren",       "arent",    "as",
      "at",         "be",       "because",  "been",    "before",  "being",      "below",    "between",
      "both",       "but",      "by",       "can",     "couldn",  "couldnt",    "d",        "did",
      "didn",       "didnt",    "do",       "does",    "doesn",   "doesnt",     "doing",    "don",
      "dont",       "down",     "during",   "each",    "few",     "for",        "from",     "further",
      "had",        "hadn",     "hadnt",    "has",     "hasn",    "hasnt",      "have",     "haven",
      "havent",     "having",   "he",       "her",     "here",    "hers",       "herself",  "him",
      "himself",    "his",      "how",      "i",       "if",      "in",         "into",     "is",
      "isn",        "isnt",     "it",       "its",     "itself",  "just",       "ll",       "m",
      "ma",         "me",       "mightn",   "mightnt", "more",    "most",       "mustn",    "mustnt",
      "my",         "myself",   "needn",    "neednt",  "no",      "nor",        "not",      "now",
      "o",          "of",       "off",      "on",      "once",    "only",       "or",       "other",
      "our",        "ours",     "ourselves", "out",    "over",    "own",        "re",       "s",
      "same",       "shan",     "shant",    "she",     "shes",    "should",     "shouldn",  "shouldnt",
      "shouldve",   "so",       "some",     "such",    "t",       "than",       "that",     "thatll",
      "the",        "their",    "theirs",   "them",    "themselves", "then",    "there",    "these",
      "they",       "this",     "those",    "through", "to",      "too",        "under",    "until",
      "up",         "ve",       "very",     "was",     "wasn",    "wasnt",      "we",       "were",
      "weren",      "werent",   "what",     "when",    "where",   "which",      "while",    "who",
      "whom",       "why",      "will",     "with",    "won",     "wont",       "wouldn",   "wouldnt",
      "y",          "you",      "youd",     "youll",   "your",    "youre",      "yours",    "yourself",
      "yourselves", "youve"};
  return words;
}

StopwordSet parse_stopwords(std::string_view contents) {
  StopwordSet words;
  for (const auto& raw : split_lines(contents)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    words.emplace(line);
  }
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) { return parse_stopwords(read_file(path)); }

std::vector<std::string> tokenize(std::string_view clean, const StopwordSet& stopwords, size_t min_len) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < clean.size()) {
    while (i < clean.size() && clean[i] == ' ') ++i;
    size_t j = i;
    while (j < clean.size() && clean[j] != ' ') ++j;
    const std::string_view token = clean.substr(i, j - i);
    if (!token.empty() && token.size() >= min_len && stopwords.find(token) == stopwords.end()) {
      tokens.emplace_back(token);
    }
    i = j;
  }
  return tokens;
}

TokenizedDoc preprocess_document(const RawMessage& msg, const PreprocessOptions& options) {
  TokenizedDoc doc;
  doc.message_id = msg.id;
  const std::string clean = normalize(msg.text, *options.smileys);
  for (const auto& token : tokenize(clean, *options.stopwords, options.min_token_length)) {
    doc.tokens.push_back(stem(token));
  }
  return doc;
}

std::vector<TokenizedDoc> preprocess_all(const std::vector<RawMessage>& msgs,
                                         const PreprocessOptions& options) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(msgs.size());
  for (const auto& m : msgs) docs.push_back(preprocess_document(m, options));
  return docs;
}

}  // namespace crisis_pulse::text
