#include "crisis_pulse/corpus/bow.hpp"

#include <cmath>
#include <map>

#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::corpus {

double BowVector::total_weight() const {
  double total = 0.0;
  for (const auto& e : entries) total += e.weight;
  return total;
}

BowVector to_bow(const text::TokenizedDoc& doc, const Dictionary& dict) {
  std::map<TokenId, double> counts;
  for (const auto& t : doc.tokens) {
    if (auto id = dict.find(t)) counts[*id] += 1.0;
  }
  BowVector bow;
  bow.entries.reserve(counts.size());
  for (const auto& [id, count] : counts) bow.entries.push_back({id, count});
  return bow;
}

std::vector<BowVector> tfidf_corpus(std::span<const BowVector> bows, const Dictionary& dict) {
  const double num_docs = static_cast<double>(dict.num_docs());
  std::vector<BowVector> out;
  out.reserve(bows.size());
  std::vector<double> weights;
  for (const auto& bow : bows) {
    BowVector v;
    weights.clear();
    for (const auto& e : bow.entries) {
      const double idf = std::log2(num_docs / static_cast<double>(dict.doc_freq(e.id)));
      const double w = e.weight * idf;
      if (w > 0.0) {
        v.entries.push_back({e.id, w});
        weights.push_back(w);
      }
    }
    if (!weights.empty()) {
      const double norm = std::sqrt(simd::dot(weights, weights));
      simd::divide(weights, norm);
      for (size_t i = 0; i < weights.size(); ++i) v.entries[i].weight = weights[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace crisis_pulse::corpus
