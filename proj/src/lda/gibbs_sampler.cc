#include "crisis_pulse/lda/gibbs_sampler.hpp"

#include <cmath>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::lda {

std::vector<SampledToken> expand_tokens(const corpus::BowVector& doc) {
  std::vector<SampledToken> tokens;
  for (const auto& e : doc.entries) {
    if (!(e.weight > 0.0)) continue;
    const double whole = std::floor(e.weight);
    if (whole == e.weight && whole <= 1e6) {
      for (auto i = static_cast<long>(whole); i > 0; --i) tokens.push_back({e.id, 1.0});
    } else {
      tokens.push_back({e.id, e.weight});
    }
  }
  return tokens;
}

GibbsSampler::GibbsSampler(std::span<const corpus::BowVector> corpus, size_t vocab_size,
                           const TrainParams& params)
    : params_(params), vocab_size_(vocab_size), rng_(params.seed) {
  if (corpus.empty()) throw EmptyCorpus("LDA training needs at least one document");
  if (params.num_topics < 1) throw InvalidHyperparameter("number of topics must be >= 1");
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) throw InvalidHyperparameter("alpha must be > 0");
  if (!(params.beta > 0.0) || !std::isfinite(params.beta)) throw InvalidHyperparameter("beta must be > 0");
  if (vocab_size == 0) throw EmptyCorpus("vocabulary is empty");

  const size_t num_topics = params.num_topics;
  docs_.reserve(corpus.size());
  for (const auto& bow : corpus) {
    for (const auto& e : bow.entries) {
      if (e.id >= vocab_size) {
        throw VocabularyMismatch("token id " + std::to_string(e.id) + " >= vocabulary size " +
                                 std::to_string(vocab_size));
      }
    }
    docs_.push_back(expand_tokens(bow));
  }
  doc_topic_.assign(docs_.size() * num_topics, 0.0);
  word_topic_.assign(vocab_size * num_topics, 0.0);
  topic_total_.assign(num_topics, 0.0);
  doc_length_.assign(docs_.size(), 0.0);
  scratch_.assign(num_topics, 0.0);
  assignments_.resize(docs_.size());
  for (size_t d = 0; d < docs_.size(); ++d) {
    assignments_[d].resize(docs_[d].size());
    for (size_t i = 0; i < docs_[d].size(); ++i) {
      doc_length_[d] += docs_[d][i].weight;
      const auto k = static_cast<std::uint32_t>(rng_.below(num_topics));
      assignments_[d][i] = k;
      add(d, i, k, 1.0);
    }
  }
}

void GibbsSampler::add(size_t doc, size_t token, size_t topic, double sign) {
  const size_t num_topics = params_.num_topics;
  const auto& t = docs_[doc][token];
  const double w = sign * t.weight;
  doc_topic_[doc * num_topics + topic] += w;
  word_topic_[t.word * num_topics + topic] += w;
  topic_total_[topic] += w;
}

std::span<const double> GibbsSampler::doc_topic(size_t doc) const {
  return std::span<const double>(doc_topic_).subspan(doc * params_.num_topics, params_.num_topics);
}

std::span<const double> GibbsSampler::word_topic(corpus::TokenId word) const {
  return std::span<const double>(word_topic_).subspan(word * params_.num_topics, params_.num_topics);
}

size_t GibbsSampler::draw(std::span<double> weights) {
  double running = 0.0;
  for (auto& w : weights) {
    running += w;
    w = running;
  }
  const double target = rng_.uniform() * running;
  for (size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > target) return k;
  }
  return weights.size() - 1;
}

void GibbsSampler::resample_token(size_t doc, size_t token) {
  const size_t old_topic = assignments_[doc][token];
  add(doc, token, old_topic, -1.0);
  const double vocab_beta = static_cast<double>(vocab_size_) * params_.beta;
  simd::gibbs_topic_weights(doc_topic(doc), word_topic(docs_[doc][token].word), topic_total_, params_.alpha,
                            params_.beta, vocab_beta, scratch_);
  const size_t new_topic = draw(scratch_);
  assignments_[doc][token] = static_cast<std::uint32_t>(new_topic);
  add(doc, token, new_topic, 1.0);
}

std::vector<double> GibbsSampler::conditional(size_t doc, size_t token) const {
  const size_t num_topics = params_.num_topics;
  const size_t current = assignments_[doc][token];
  const auto& t = docs_[doc][token];
  std::vector<double> dt(doc_topic(doc).begin(), doc_topic(doc).end());
  std::vector<double> wt(word_topic(t.word).begin(), word_topic(t.word).end());
  std::vector<double> tt = topic_total_;
  dt[current] -= t.weight;
  wt[current] -= t.weight;
  tt[current] -= t.weight;
  std::vector<double> p(num_topics);
  simd::gibbs_topic_weights(dt, wt, tt, params_.alpha, params_.beta,
                            static_cast<double>(vocab_size_) * params_.beta, p);
  const double total = simd::sum(p);
  simd::divide(p, total);
  return p;
}

void GibbsSampler::set_assignment(size_t doc, size_t token, size_t topic) {
  if (topic >= params_.num_topics) throw TopicOutOfRange("topic " + std::to_string(topic));
  add(doc, token, assignments_[doc][token], -1.0);
  assignments_[doc][token] = static_cast<std::uint32_t>(topic);
  add(doc, token, topic, 1.0);
}

void GibbsSampler::sweep() {
  for (size_t d = 0; d < docs_.size(); ++d) {
    for (size_t i = 0; i < docs_[d].size(); ++i) resample_token(d, i);
  }
  ++sweeps_;
}

double GibbsSampler::conservation_error() const {
  const size_t num_topics = params_.num_topics;
  double worst = 0.0;
  for (size_t d = 0; d < docs_.size(); ++d) {
    double s = 0.0;
    for (size_t k = 0; k < num_topics; ++k) s += doc_topic_[d * num_topics + k];
    worst = std::max(worst, std::abs(s - doc_length_[d]));
  }
  std::vector<double> column(num_topics, 0.0);
  for (size_t w = 0; w < vocab_size_; ++w) {
    for (size_t k = 0; k < num_topics; ++k) column[k] += word_topic_[w * num_topics + k];
  }
  for (size_t k = 0; k < num_topics; ++k) worst = std::max(worst, std::abs(column[k] - topic_total_[k]));
  return worst;
}

double GibbsSampler::training_perplexity() const {
  const size_t num_topics = params_.num_topics;
  const double vocab_beta = static_cast<double>(vocab_size_) * params_.beta;
  const double k_alpha = static_cast<double>(num_topics) * params_.alpha;
  std::vector<double> theta(num_topics), phi_col(num_topics);
  double log_lik = 0.0, total = 0.0;
  for (size_t d = 0; d < docs_.size(); ++d) {
    for (size_t k = 0; k < num_topics; ++k) {
      theta[k] = (doc_topic_[d * num_topics + k] + params_.alpha) / (doc_length_[d] + k_alpha);
    }
    for (const auto& t : docs_[d]) {
      for (size_t k = 0; k < num_topics; ++k) {
        phi_col[k] = (word_topic_[t.word * num_topics + k] + params_.beta) / (topic_total_[k] + vocab_beta);
      }
      log_lik += t.weight * std::log(simd::dot(theta, phi_col));
      total += t.weight;
    }
  }
  if (total <= 0.0) throw EmptyCorpus("corpus carries no weight");
  return std::exp(-log_lik / total);
}

LdaModel GibbsSampler::model() const {
  const size_t num_topics = params_.num_topics;
  LdaModel m;
  m.num_topics = num_topics;
  m.vocab_size = vocab_size_;
  m.alpha = params_.alpha;
  m.beta = params_.beta;
  m.seed = params_.seed;
  m.iterations = sweeps_;
  m.phi.resize(num_topics * vocab_size_);
  const double vocab_beta = static_cast<double>(vocab_size_) * params_.beta;
  for (size_t k = 0; k < num_topics; ++k) {
    const double denom = topic_total_[k] + vocab_beta;
    for (size_t w = 0; w < vocab_size_; ++w) {
      m.phi[k * vocab_size_ + w] = (word_topic_[w * num_topics + k] + params_.beta) / denom;
    }
  }
  return m;
}

LdaModel train_lda(std::span<const corpus::BowVector> corpus, size_t vocab_size, const TrainParams& params,
                   const SweepObserver& observer) {
  GibbsSampler sampler(corpus, vocab_size, params);
  for (size_t it = 0; it < params.iterations; ++it) {
    sampler.sweep();
    if (observer) observer(sampler);
  }
  return sampler.model();
}

}  // namespace crisis_pulse::lda
