#pragma once

#include <span>
#include <utility>
#include <vector>

#include "crisis_pulse/corpus/dictionary.hpp"

namespace crisis_pulse::corpus {

struct BowEntry {
  TokenId id;
  double weight;  // > 0; a count for BoW, a real weight after TF-IDF

  friend bool operator==(const BowEntry&, const BowEntry&) = default;
};

// Sparse document vector, ids strictly increasing.
struct BowVector {
  std::vector<BowEntry> entries;

  double total_weight() const;
  friend bool operator==(const BowVector&, const BowVector&) = default;
};

// Out-of-dictionary tokens are dropped silently.
BowVector to_bow(const text::TokenizedDoc& doc, const Dictionary& dict);

// weight = count * log2(D / doc_freq), then each vector scaled to unit L2
// norm. Terms whose idf is zero vanish; a document left with nothing becomes
// an empty vector.
std::vector<BowVector> tfidf_corpus(std::span<const BowVector> bows, const Dictionary& dict);

}  // namespace crisis_pulse::corpus
