#include "crisis_pulse/corpus/term_stats.hpp"

#include <algorithm>
#include <unordered_map>

namespace crisis_pulse::corpus {
namespace {

RankedTerms rank(std::unordered_map<std::string, std::uint64_t>& counts, std::uint64_t min_count,
                 size_t top_n) {
  RankedTerms ranked;
  for (auto& [term, count] : counts) {
    if (count >= min_count) ranked.emplace_back(term, count);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
  return ranked;
}

}  // namespace

RankedTerms term_frequencies(std::span<const text::TokenizedDoc> docs, size_t top_n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : docs) {
    for (const auto& t : doc.tokens) ++counts[t];
  }
  return rank(counts, 1, top_n);
}

RankedTerms key_bigrams(std::span<const text::TokenizedDoc> docs, std::uint64_t min_count, size_t top_n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : docs) {
    for (size_t i = 0; i + 1 < doc.tokens.size(); ++i) ++counts[doc.tokens[i] + " " + doc.tokens[i + 1]];
  }
  return rank(counts, std::max<std::uint64_t>(min_count, 1), top_n);
}

}  // namespace crisis_pulse::corpus
