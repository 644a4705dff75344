#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "crisis_pulse/corpus/bow.hpp"
#include "crisis_pulse/lda/lda_model.hpp"
#include "crisis_pulse/lda/rng.hpp"

namespace crisis_pulse::lda {

struct TrainParams {
  size_t num_topics = 10;
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  size_t iterations = kDefaultIterations;
  std::uint64_t seed = 0;
};

// One latent assignment. A BoW entry with integral count c becomes c tokens of
// weight 1; a fractional (TF-IDF) entry becomes a single token carrying its
// weight, so both corpus variants share one sampler.
struct SampledToken {
  corpus::TokenId word;
  double weight;
};

std::vector<SampledToken> expand_tokens(const corpus::BowVector& doc);

// Collapsed Gibbs sampler over weighted count tables:
//   n_dk  weighted tokens of document d assigned to topic k
//   n_wk  weighted tokens of word w assigned to topic k
//   n_k   weighted tokens assigned to topic k
// A token is resampled from p(z = k) ~ (n_dk + alpha)(n_wk + beta)/(n_k + V beta)
// with its own weight removed from the tables.
class GibbsSampler {
 public:
  // Throws EmptyCorpus, InvalidHyperparameter, VocabularyMismatch.
  GibbsSampler(std::span<const corpus::BowVector> corpus, size_t vocab_size, const TrainParams& params);

  void sweep();
  void resample_token(size_t doc, size_t token);

  // Normalized conditional for one token with its counts removed; does not
  // touch the sampler state.
  std::vector<double> conditional(size_t doc, size_t token) const;

  size_t num_docs() const { return docs_.size(); }
  size_t num_topics() const { return params_.num_topics; }
  size_t vocab_size() const { return vocab_size_; }
  size_t sweeps_done() const { return sweeps_; }
  const TrainParams& params() const { return params_; }

  const std::vector<SampledToken>& tokens(size_t doc) const { return docs_[doc]; }
  size_t assignment(size_t doc, size_t token) const { return assignments_[doc][token]; }
  // Moves a token to another topic, keeping the tables consistent.
  void set_assignment(size_t doc, size_t token, size_t topic);

  std::span<const double> doc_topic(size_t doc) const;
  std::span<const double> word_topic(corpus::TokenId word) const;
  std::span<const double> topic_totals() const { return topic_total_; }
  double doc_length(size_t doc) const { return doc_length_[doc]; }

  // Largest absolute violation of sum_k n_dk = |d| and sum_w n_wk = n_k.
  double conservation_error() const;

  // exp(-sum weight * log(sum_k theta_dk phi_kw) / sum weight) with theta and
  // phi read off the current tables.
  double training_perplexity() const;

  // phi_kw = (n_kw + beta) / (n_k + V beta)
  LdaModel model() const;

 private:
  void add(size_t doc, size_t token, size_t topic, double sign);
  size_t draw(std::span<double> weights);

  TrainParams params_;
  size_t vocab_size_;
  std::vector<std::vector<SampledToken>> docs_;
  std::vector<std::vector<std::uint32_t>> assignments_;
  std::vector<double> doc_topic_;   // D x K
  std::vector<double> word_topic_;  // V x K
  std::vector<double> topic_total_;
  std::vector<double> doc_length_;
  std::vector<double> scratch_;
  Rng rng_;
  size_t sweeps_ = 0;
};

using SweepObserver = std::function<void(const GibbsSampler&)>;

// Runs params.iterations sweeps; the observer, when set, sees the state after
// every sweep. Deterministic for a fixed seed.
LdaModel train_lda(std::span<const corpus::BowVector> corpus, size_t vocab_size, const TrainParams& params,
                   const SweepObserver& observer = {});

}  // namespace crisis_pulse::lda
