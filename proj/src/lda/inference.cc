#include "crisis_pulse/lda/inference.hpp"

#include <cmath>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/lda/gibbs_sampler.hpp"
#include "crisis_pulse/lda/rng.hpp"
#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::lda {

TopicInferencer::TopicInferencer(const LdaModel& model)
    : model_(model), phi_by_word_(model.num_topics * model.vocab_size) {
  for (size_t k = 0; k < model.num_topics; ++k) {
    for (size_t w = 0; w < model.vocab_size; ++w) {
      phi_by_word_[w * model.num_topics + k] = model.phi[k * model.vocab_size + w];
    }
  }
}

TopicAssignment TopicInferencer::infer(const corpus::BowVector& doc, size_t fold_iters,
                                       std::uint64_t seed) const {
  const size_t num_topics = model_.num_topics;
  for (const auto& e : doc.entries) {
    if (e.id >= model_.vocab_size) {
      throw VocabularyMismatch("token id " + std::to_string(e.id) + " >= vocabulary size " +
                               std::to_string(model_.vocab_size));
    }
  }
  const auto tokens = expand_tokens(doc);
  double length = 0.0;
  for (const auto& t : tokens) length += t.weight;

  Rng rng(seed);
  std::vector<double> counts(num_topics, 0.0), weights(num_topics), theta_sum(num_topics, 0.0);
  std::vector<std::uint32_t> z(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    z[i] = static_cast<std::uint32_t>(rng.below(num_topics));
    counts[z[i]] += tokens[i].weight;
  }

  const double denom = length + static_cast<double>(num_topics) * model_.alpha;
  auto accumulate_theta = [&] {
    for (size_t k = 0; k < num_topics; ++k) theta_sum[k] += (counts[k] + model_.alpha) / denom;
  };

  const size_t averaged = fold_iters / 2;
  size_t samples = 0;
  if (!tokens.empty()) {
    for (size_t it = 0; it < fold_iters; ++it) {
      for (size_t i = 0; i < tokens.size(); ++i) {
        counts[z[i]] -= tokens[i].weight;
        const std::span<const double> phi_col(phi_by_word_.data() + tokens[i].word * num_topics, num_topics);
        simd::foldin_topic_weights(counts, phi_col, model_.alpha, weights);
        double running = 0.0;
        for (auto& w : weights) {
          running += w;
          w = running;
        }
        const double target = rng.uniform() * running;
        size_t k = num_topics - 1;
        for (size_t j = 0; j < num_topics; ++j) {
          if (weights[j] > target) {
            k = j;
            break;
          }
        }
        z[i] = static_cast<std::uint32_t>(k);
        counts[k] += tokens[i].weight;
      }
      if (averaged > 0 && it >= fold_iters - averaged) {
        accumulate_theta();
        ++samples;
      }
    }
  }
  if (samples == 0) {
    accumulate_theta();
    samples = 1;
  }

  TopicAssignment out;
  out.theta.resize(num_topics);
  double total = 0.0;
  for (size_t k = 0; k < num_topics; ++k) {
    out.theta[k] = theta_sum[k] / static_cast<double>(samples);
    total += out.theta[k];
  }
  for (auto& v : out.theta) v /= total;
  for (size_t k = 1; k < num_topics; ++k) {
    if (out.theta[k] > out.theta[out.topic_id]) out.topic_id = k;
  }
  out.probability = out.theta[out.topic_id];
  return out;
}

double TopicInferencer::log_likelihood(const corpus::BowVector& doc, std::span<const double> theta) const {
  const size_t num_topics = model_.num_topics;
  double total = 0.0;
  for (const auto& e : doc.entries) {
    const std::span<const double> phi_col(phi_by_word_.data() + e.id * num_topics, num_topics);
    total += e.weight * std::log(simd::dot(theta, phi_col));
  }
  return total;
}

TopicAssignment infer_topic(const LdaModel& model, const corpus::BowVector& doc, size_t fold_iters,
                            std::uint64_t seed) {
  return TopicInferencer(model).infer(doc, fold_iters, seed);
}

double perplexity(const LdaModel& model, std::span<const corpus::BowVector> corpus, size_t fold_iters,
                  std::uint64_t seed) {
  const TopicInferencer inferencer(model);
  double log_lik = 0.0, weight = 0.0;
  for (size_t d = 0; d < corpus.size(); ++d) {
    const auto assignment = inferencer.infer(corpus[d], fold_iters, mix_seed(seed, d));
    log_lik += inferencer.log_likelihood(corpus[d], assignment.theta);
    weight += corpus[d].total_weight();
  }
  if (corpus.empty() || weight <= 0.0) throw EmptyCorpus("perplexity needs a non-empty corpus");
  return std::exp(-log_lik / weight);
}

}  // namespace crisis_pulse::lda
