#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crisis_pulse/corpus/bow.hpp"
#include "crisis_pulse/lda/lda_model.hpp"

namespace crisis_pulse::lda {

// Fold-in Gibbs sampling with phi held fixed. Keeps a word-major copy of phi
// so repeated inference against one model stays cheap; const methods are
// reentrant.
class TopicInferencer {
 public:
  explicit TopicInferencer(const LdaModel& model);

  // theta_k = (n_dk + alpha) / (|d| + K alpha), averaged over the last
  // fold_iters / 2 sweeps (the final state when that is zero).
  // Throws VocabularyMismatch for ids >= V.
  TopicAssignment infer(const corpus::BowVector& doc, size_t fold_iters, std::uint64_t seed) const;

  // sum over entries of weight * log(sum_k theta_k phi_kw)
  double log_likelihood(const corpus::BowVector& doc, std::span<const double> theta) const;

  const LdaModel& model() const { return model_; }

 private:
  const LdaModel& model_;
  std::vector<double> phi_by_word_;  // V x K
};

TopicAssignment infer_topic(const LdaModel& model, const corpus::BowVector& doc,
                            size_t fold_iters = kDefaultFoldIterations, std::uint64_t seed = 0);

// exp(-sum_d log p(d) / total weight), theta per document from infer_topic
// (document d uses a seed derived from seed and d). Throws EmptyCorpus when
// the corpus carries no weight.
double perplexity(const LdaModel& model, std::span<const corpus::BowVector> corpus,
                  size_t fold_iters = kDefaultFoldIterations, std::uint64_t seed = 0);

}  // namespace crisis_pulse::lda
