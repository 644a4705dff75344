#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/text/message.hpp"
#include "crisis_pulse/text/normalize.hpp"

namespace crisis_pulse::text {

using StopwordSet = std::set<std::string, std::less<>>;

inline constexpr size_t kDefaultMinTokenLength = 3;

struct TokenizedDoc {
  std::string message_id;
  std::vector<std::string> tokens;     // stemmed, in message order
  std::vector<std::uint32_t> token_ids;  // empty until attached to a dictionary
};

// Built-in English list, identical to data/stopwords_en.txt.
const StopwordSet& default_stopwords();
StopwordSet parse_stopwords(std::string_view contents);
StopwordSet load_stopwords(const std::filesystem::path& path);

// Whitespace split; drops tokens shorter than min_len and stopwords.
std::vector<std::string> tokenize(std::string_view clean, const StopwordSet& stopwords,
                                  size_t min_len = kDefaultMinTokenLength);

struct PreprocessOptions {
  const StopwordSet* stopwords = &default_stopwords();
  const SmileyTable* smileys = &default_smileys();
  size_t min_token_length = kDefaultMinTokenLength;
};

// stem . tokenize . normalize over the message text.
TokenizedDoc preprocess_document(const RawMessage& msg, const PreprocessOptions& options = {});
std::vector<TokenizedDoc> preprocess_all(const std::vector<RawMessage>& msgs,
                                         const PreprocessOptions& options = {});

}  // namespace crisis_pulse::text
