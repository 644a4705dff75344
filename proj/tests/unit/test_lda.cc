#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/lda/gibbs_sampler.hpp"
#include "crisis_pulse/lda/inference.hpp"
#include "crisis_pulse/lda/lda_model.hpp"
#include "oracles.hpp"

using namespace crisis_pulse;
using corpus::BowVector;

namespace {

BowVector bow(std::initializer_list<std::pair<std::uint32_t, double>> entries) {
  BowVector v;
  for (const auto& [id, w] : entries) v.entries.push_back({id, w});
  return v;
}

std::vector<BowVector> small_corpus() {
  return {bow({{0, 3}, {1, 1}}), bow({{1, 2}, {2, 2}}), bow({{0, 1}, {3, 4}}), bow({{2, 1}, {3, 1}, {4, 2}})};
}

lda::TrainParams params(size_t k, size_t iters, std::uint64_t seed) {
  lda::TrainParams p;
  p.num_topics = k;
  p.iterations = iters;
  p.seed = seed;
  return p;
}

void check_distribution(std::span<const double> row) {
  double total = 0;
  for (double x : row) {
    CHECK(x >= 0.0);
    total += x;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("expand_tokens splits integral counts and keeps fractional weights whole") {
  auto toks = lda::expand_tokens(bow({{2, 3}, {5, 0.25}}));
  REQUIRE(toks.size() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(toks[i].word == 2);
    CHECK(toks[i].weight == 1.0);
  }
  CHECK(toks[3].word == 5);
  CHECK(toks[3].weight == 0.25);
}

TEST_CASE("single topic model is the smoothed unigram distribution") {
  auto corpus = small_corpus();
  auto p = params(1, 20, 7);
  auto model = lda::train_lda(corpus, 5, p);
  std::vector<double> counts(5, 0.0);
  double total = 0;
  for (const auto& d : corpus)
    for (const auto& e : d.entries) {
      counts[e.id] += e.weight;
      total += e.weight;
    }
  for (size_t w = 0; w < 5; ++w)
    CHECK(model.phi[w] == doctest::Approx((counts[w] + p.beta) / (total + 5 * p.beta)).epsilon(1e-12));
  for (const auto& d : corpus) {
    auto a = lda::infer_topic(model, d, 10, 3);
    CHECK(a.topic_id == 0);
    CHECK(a.probability == 1.0);
  }
}

TEST_CASE("training is deterministic for a fixed seed") {
  auto corpus = small_corpus();
  auto a = lda::train_lda(corpus, 5, params(3, 50, 11));
  auto b = lda::train_lda(corpus, 5, params(3, 50, 11));
  CHECK(a == b);
  CHECK(a.serialize() == b.serialize());
  auto c = lda::train_lda(corpus, 5, params(3, 50, 12));
  CHECK(c.seed == 12);
}

TEST_CASE("phi rows are distributions") {
  auto model = lda::train_lda(small_corpus(), 5, params(3, 30, 1));
  for (size_t k = 0; k < 3; ++k) check_distribution(model.topic_row(k));
}

TEST_CASE("count tables are conserved after every sweep, including weighted corpora") {
  std::vector<BowVector> weighted = {bow({{0, 0.3}, {1, 0.7}}), bow({{1, 0.5}, {2, 1.25}}), bow({{0, 2}, {2, 0.125}})};
  for (const auto& corpus : {small_corpus(), weighted}) {
    size_t sweeps = 0;
    lda::train_lda(corpus, 5, params(3, 40, 5), [&](const lda::GibbsSampler& s) {
      ++sweeps;
      CHECK(s.conservation_error() < 1e-9);
    });
    CHECK(sweeps == 40);
  }
}

TEST_CASE("sampler conditional equals the brute-force posterior ratio") {
  // Two documents over three words.
  std::vector<BowVector> corpus = {bow({{0, 2}, {1, 1}}), bow({{1, 1}, {2, 2}})};
  auto p = params(3, 0, 9);
  p.alpha = 0.5;
  p.beta = 0.3;
  lda::GibbsSampler sampler(corpus, 3, p);
  std::vector<std::vector<std::uint32_t>> words(2);
  std::vector<std::vector<std::size_t>> z(2);
  // A fixed, asymmetric assignment.
  const std::size_t fixed[2][3] = {{0, 1, 2}, {2, 2, 0}};
  for (size_t d = 0; d < 2; ++d)
    for (size_t i = 0; i < sampler.tokens(d).size(); ++i) {
      sampler.set_assignment(d, i, fixed[d][i]);
      words[d].push_back(sampler.tokens(d)[i].word);
      z[d].push_back(fixed[d][i]);
    }
  CHECK(sampler.conservation_error() < 1e-12);
  for (size_t d = 0; d < 2; ++d)
    for (size_t i = 0; i < words[d].size(); ++i) {
      auto got = sampler.conditional(d, i);
      auto want = oracle::brute_force_conditional(words, z, d, i, 3, 3, p.alpha, p.beta);
      for (size_t k = 0; k < 3; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
    }
}

TEST_CASE("resampled topics follow the conditional") {
  std::vector<BowVector> corpus = {bow({{0, 2}, {1, 1}}), bow({{1, 1}, {2, 2}})};
  auto p = params(3, 0, 21);
  p.alpha = 0.5;
  p.beta = 0.3;
  lda::GibbsSampler sampler(corpus, 3, p);
  const size_t original = sampler.assignment(0, 1);
  auto expected = sampler.conditional(0, 1);
  std::vector<double> hits(3, 0.0);
  const int n = 200000;
  for (int s = 0; s < n; ++s) {
    sampler.set_assignment(0, 1, original);
    sampler.resample_token(0, 1);
    hits[sampler.assignment(0, 1)] += 1;
  }
  for (size_t k = 0; k < 3; ++k) CHECK(hits[k] / n == doctest::Approx(expected[k]).epsilon(0.02));
}

TEST_CASE("training errors") {
  CHECK_THROWS_AS(lda::train_lda(std::vector<BowVector>{}, 5, params(2, 1, 0)), EmptyCorpus);
  CHECK_THROWS_AS(lda::train_lda(small_corpus(), 5, params(0, 1, 0)), InvalidHyperparameter);
  auto bad = params(2, 1, 0);
  bad.alpha = 0.0;
  CHECK_THROWS_AS(lda::train_lda(small_corpus(), 5, bad), InvalidHyperparameter);
  bad = params(2, 1, 0);
  bad.beta = -1.0;
  CHECK_THROWS_AS(lda::train_lda(small_corpus(), 5, bad), InvalidHyperparameter);
  CHECK_THROWS_AS(lda::train_lda(small_corpus(), 4, params(2, 1, 0)), VocabularyMismatch);
}

TEST_CASE("inference on an empty document returns the prior") {
  auto model = lda::train_lda(small_corpus(), 5, params(4, 10, 2));
  auto a = lda::infer_topic(model, BowVector{}, 20, 0);
  CHECK(a.topic_id == 0);
  for (double t : a.theta) CHECK(t == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(a.probability == doctest::Approx(0.25));
}

TEST_CASE("inference picks the topic whose phi row owns the words") {
  lda::LdaModel model;
  model.num_topics = 4;
  model.vocab_size = 8;
  model.phi.assign(32, 1e-6);
  // Topic k owns words 2k and 2k+1.
  for (size_t k = 0; k < 4; ++k) {
    model.phi[k * 8 + 2 * k] = model.phi[k * 8 + 2 * k + 1] = (1.0 - 6e-6) / 2;
  }
  auto a = lda::infer_topic(model, bow({{4, 3}, {5, 2}}), 50, 4);
  CHECK(a.topic_id == 2);
  CHECK(a.probability > 0.8);
  check_distribution(a.theta);
  CHECK(a.probability == *std::max_element(a.theta.begin(), a.theta.end()));
  CHECK_THROWS_AS(lda::infer_topic(model, bow({{8, 1}})), VocabularyMismatch);
}

TEST_CASE("inference is reproducible and reentrant") {
  auto model = lda::train_lda(small_corpus(), 5, params(3, 30, 8));
  lda::TopicInferencer inf(model);
  auto doc = bow({{0, 1}, {3, 2}});
  auto a = inf.infer(doc, 40, 99);
  auto b = inf.infer(doc, 40, 99);
  CHECK(a.theta == b.theta);
  CHECK(a.topic_id == b.topic_id);
}

TEST_CASE("top_terms ranks a row and covers it at n = V") {
  lda::LdaModel model;
  model.num_topics = 2;
  model.vocab_size = 4;
  model.phi = {0.1, 0.4, 0.1, 0.4, 0.97, 0.01, 0.01, 0.01};
  auto row = lda::top_terms(model, 0, 4);
  REQUIRE(row.size() == 4);
  CHECK(row[0].first == 1);
  CHECK(row[1].first == 3);
  CHECK(row[2].first == 0);
  CHECK(row[3].first == 2);
  double total = 0;
  for (const auto& [id, w] : row) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  auto delta = lda::top_terms(model, 1, 1);
  REQUIRE(delta.size() == 1);
  CHECK(delta[0].first == 0);
  CHECK(lda::top_terms(model, 1, 10).size() == 4);
  CHECK_THROWS_AS(lda::top_terms(model, 2, 1), TopicOutOfRange);
}

TEST_CASE("perplexity analytic cases") {
  lda::LdaModel uniform;
  uniform.num_topics = 3;
  uniform.vocab_size = 7;
  uniform.phi.assign(21, 1.0 / 7.0);
  CHECK(lda::perplexity(uniform, small_corpus(), 10, 0) == doctest::Approx(7.0).epsilon(1e-12));

  std::vector<BowVector> one_word = {bow({{0, 3}}), bow({{0, 1}})};
  auto model = lda::train_lda(one_word, 1, params(2, 10, 0));
  CHECK(lda::perplexity(model, one_word, 10, 0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(lda::perplexity(uniform, std::vector<BowVector>{}), EmptyCorpus);
  CHECK_THROWS_AS(lda::perplexity(uniform, std::vector<BowVector>{BowVector{}}), EmptyCorpus);
}

TEST_CASE("trained model beats a random one on its own corpus") {
  auto synth = oracle::synthetic_lda(120, 40, 2, 30, 5);
  auto model = lda::train_lda(synth.corpus, 40, params(2, 100, 3));
  lda::LdaModel random = model;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (size_t k = 0; k < 2; ++k) {
    double total = 0;
    for (size_t w = 0; w < 40; ++w) total += random.phi[k * 40 + w] = u(rng);
    for (size_t w = 0; w < 40; ++w) random.phi[k * 40 + w] /= total;
  }
  const double trained = lda::perplexity(model, synth.corpus, 20, 0);
  CHECK(trained >= 1.0);
  CHECK(trained <= lda::perplexity(random, synth.corpus, 20, 0));
}

TEST_CASE("training perplexity falls on the synthetic recovery corpus") {
  auto synth = oracle::synthetic_lda(200, 60, 2, 40, 17);
  std::vector<double> trace;
  auto model = lda::train_lda(synth.corpus, 60, params(2, 100, 4),
                              [&](const lda::GibbsSampler& s) { trace.push_back(s.training_perplexity()); });
  const double early = std::accumulate(trace.begin(), trace.begin() + 10, 0.0) / 10;
  const double late = std::accumulate(trace.end() - 10, trace.end(), 0.0) / 10;
  CHECK(late <= early);
  CHECK(oracle::best_permutation_cosine(synth.true_phi, model.phi, 60) >= 0.9);
}

TEST_CASE("model serialization round-trips exactly") {
  auto model = lda::train_lda(small_corpus(), 5, params(3, 25, 77));
  auto text = model.serialize();
  auto back = lda::LdaModel::deserialize(text);
  CHECK(back == model);
  CHECK(back.serialize() == text);
  CHECK_THROWS_AS(lda::LdaModel::deserialize("garbage"), FormatError);
}
