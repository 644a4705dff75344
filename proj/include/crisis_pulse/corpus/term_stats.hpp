#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crisis_pulse/text/preprocess.hpp"

namespace crisis_pulse::corpus {

using RankedTerms = std::vector<std::pair<std::string, std::uint64_t>>;

// Token occurrence counts, count descending then token ascending, at most top_n.
RankedTerms term_frequencies(std::span<const text::TokenizedDoc> docs, size_t top_n);

// Adjacent token pairs within a document, rendered "first second", kept when
// count >= min_count and ranked like term_frequencies.
RankedTerms key_bigrams(std::span<const text::TokenizedDoc> docs, std::uint64_t min_count, size_t top_n);

}  // namespace crisis_pulse::corpus
