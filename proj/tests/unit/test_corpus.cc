#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "crisis_pulse/corpus/bow.hpp"
#include "crisis_pulse/corpus/dictionary.hpp"
#include "crisis_pulse/corpus/term_stats.hpp"
#include "crisis_pulse/error.hpp"

using namespace crisis_pulse;
using namespace crisis_pulse::corpus;
using text::TokenizedDoc;

namespace {

TokenizedDoc doc(std::vector<std::string> tokens, std::string id = "") { return TokenizedDoc{id, std::move(tokens), {}}; }

// D documents; `token` appears in the first `df` of them, "filler<i>" fills each.
std::vector<TokenizedDoc> corpus_with(std::size_t d, const std::vector<std::pair<std::string, std::size_t>>& dfs) {
  std::vector<TokenizedDoc> docs(d);
  for (std::size_t i = 0; i < d; ++i) docs[i].tokens.push_back("filler" + std::to_string(i));
  for (const auto& [token, df] : dfs) {
    for (std::size_t i = 0; i < df; ++i) docs[i].tokens.push_back(token);
  }
  return docs;
}

}  // namespace

TEST_CASE("dictionary threshold examples") {
  {
    const auto docs = corpus_with(20, {{"common", 18}, {"mid", 10}});
    DictionaryParams p{1, 0.5, 100000};
    const auto dict = build_dictionary(docs, p);
    CHECK_FALSE(dict.find("common"));
    CHECK(dict.find("mid"));
  }
  {
    const auto docs = corpus_with(40, {{"rare", 14}, {"kept", 16}});
    const auto dict = build_dictionary(docs, DictionaryParams{});
    CHECK_FALSE(dict.find("rare"));
    CHECK(dict.find("kept"));
    CHECK(dict.size() == 1);
  }
  {
    const auto docs = corpus_with(10, {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}, {"e", 5}});
    DictionaryParams p{1, 0.5, 3};
    auto dict = build_dictionary(docs, p);
    CHECK(dict.size() == 3);
    CHECK(dict.find("e") == TokenId{0});
    CHECK(dict.find("d") == TokenId{1});
    CHECK(dict.find("c") == TokenId{2});
  }
}

TEST_CASE("dictionary boundaries are inclusive where documented") {
  // df == min_docs kept; df/D == max_frac kept.
  const auto docs = corpus_with(30, {{"edge_low", 15}, {"edge_high", 15}});
  const auto dict = build_dictionary(docs, DictionaryParams{15, 0.5, 100});
  CHECK(dict.find("edge_low"));
  CHECK(dict.find("edge_high"));
}

TEST_CASE("dictionary errors, ids, stats and serialization") {
  CHECK_THROWS_AS(build_dictionary(std::vector<TokenizedDoc>{}, DictionaryParams{}), EmptyCorpus);
  std::vector<TokenizedDoc> docs = {doc({"flood", "flood", "warn"}), doc({"flood", "river"}), doc({"warn"}),
                                    doc({"river", "flood"})};
  const auto dict = build_dictionary(docs, DictionaryParams{2, 1.0, 10});
  REQUIRE(dict.size() == 3);
  const TokenId flood = *dict.find("flood");
  CHECK(flood == 0);
  CHECK(dict.doc_freq(flood) == 3);
  CHECK(dict.total_freq(flood) == 4);
  CHECK(dict.num_docs() == 4);
  // river and warn tie on total_freq 2: lexicographic order.
  CHECK(dict.find("river") == TokenId{1});
  CHECK(dict.find("warn") == TokenId{2});

  const auto copy = Dictionary::deserialize(dict.serialize());
  CHECK(copy.serialize() == dict.serialize());
  CHECK(copy.find("warn") == dict.find("warn"));
  CHECK_THROWS_AS(Dictionary::deserialize("garbage"), FormatError);

  TokenizedDoc d = doc({"flood", "unknown", "warn"});
  dict.attach(d);
  CHECK(d.token_ids == std::vector<std::uint32_t>{flood, *dict.find("warn")});
}

TEST_CASE("dictionary matches a naive filter on random corpora") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t D = 1 + rng() % 60;
    const std::size_t V = 1 + rng() % 80;
    std::vector<TokenizedDoc> docs(D);
    for (auto& d : docs) {
      const std::size_t len = rng() % 15;
      for (std::size_t i = 0; i < len; ++i) d.tokens.push_back("t" + std::to_string(rng() % V));
    }
    const DictionaryParams p{1 + rng() % 4, 0.3 + 0.1 * static_cast<double>(rng() % 6), 1 + rng() % 40};
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> stats;  // df, tf
    for (const auto& d : docs) {
      std::set<std::string> uniq(d.tokens.begin(), d.tokens.end());
      for (const auto& t : uniq) ++stats[t].first;
      for (const auto& t : d.tokens) ++stats[t].second;
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (const auto& [t, s] : stats) {
      if (s.first < p.min_docs) continue;
      if (static_cast<double>(s.first) / static_cast<double>(D) > p.max_frac) continue;
      kept.emplace_back(t, s.second);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (kept.size() > p.keep_n) kept.resize(p.keep_n);
    const auto dict = build_dictionary(docs, p);
    REQUIRE(dict.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) CHECK(dict.token(static_cast<TokenId>(i)) == kept[i].first);
  }
}

TEST_CASE("to_bow examples") {
  std::vector<TokenizedDoc> docs = {doc({"flood", "warn"}), doc({"flood", "warn"}), doc({"other"})};
  const auto dict = build_dictionary(docs, DictionaryParams{1, 1.0, 10});
  const auto bow = to_bow(doc({"flood", "flood", "warn"}), dict);
  REQUIRE(bow.entries.size() == 2);
  CHECK(bow.entries[0] == BowEntry{*dict.find("flood"), 2.0});
  CHECK(bow.entries[1] == BowEntry{*dict.find("warn"), 1.0});
  CHECK(bow.total_weight() == 3.0);
  CHECK(to_bow(doc({"zzz", "yyy"}), dict).entries.empty());
  CHECK(to_bow(doc({}), dict).entries.empty());
}

TEST_CASE("tfidf examples") {
  // D = 4; "everywhere" in all docs, "once" in one doc.
  std::vector<TokenizedDoc> docs = {doc({"everywhere", "once"}), doc({"everywhere", "two"}),
                                    doc({"everywhere", "two"}), doc({"everywhere"})};
  const auto dict = build_dictionary(docs, DictionaryParams{1, 1.0, 10});
  std::vector<BowVector> bows;
  for (const auto& d : docs) bows.push_back(to_bow(d, dict));
  const auto tfidf = tfidf_corpus(bows, dict);
  REQUIRE(tfidf.size() == 4);
  // doc 0: everywhere idf 0 dropped; once idf log2(4) = 2, normalized to 1.
  REQUIRE(tfidf[0].entries.size() == 1);
  CHECK(tfidf[0].entries[0].id == *dict.find("once"));
  CHECK(tfidf[0].entries[0].weight == doctest::Approx(1.0));
  CHECK(tfidf[3].entries.empty());

  // pre-normalization (3, 4) -> (0.6, 0.8): counts 3 and 4 with equal idf.
  std::vector<TokenizedDoc> d2 = {doc({"p", "p", "p", "q", "q", "q", "q"}), doc({"r"})};
  const auto dict2 = build_dictionary(d2, DictionaryParams{1, 1.0, 10});
  std::vector<BowVector> b2 = {to_bow(d2[0], dict2), to_bow(d2[1], dict2)};
  const auto t2 = tfidf_corpus(b2, dict2);
  std::map<std::string, double> w;
  for (const auto& e : t2[0].entries) w[dict2.token(e.id)] = e.weight;
  CHECK(w["p"] == doctest::Approx(0.6));
  CHECK(w["q"] == doctest::Approx(0.8));
}

TEST_CASE("term frequencies and key bigrams") {
  std::vector<TokenizedDoc> docs = {doc({"flood", "flood", "warn"}), doc({"flood", "warn", "river"})};
  CHECK(term_frequencies(docs, 2) == RankedTerms{{"flood", 3}, {"warn", 2}});
  CHECK(term_frequencies(std::vector<TokenizedDoc>{}, 5).empty());
  std::vector<TokenizedDoc> tie = {doc({"warn", "flood", "warn", "flood"})};
  CHECK(term_frequencies(tie, 5) == RankedTerms{{"flood", 2}, {"warn", 2}});

  std::vector<TokenizedDoc> five(5, doc({"flood", "warn"}));
  CHECK(key_bigrams(five, 3, 10) == RankedTerms{{"flood warn", 5}});
  CHECK(key_bigrams(five, 6, 10).empty());

  std::vector<TokenizedDoc> mixed;
  for (int i = 0; i < 7; ++i) mixed.push_back(doc({"aa", "bb"}));
  for (int i = 0; i < 5; ++i) mixed.push_back(doc({"dd", "ee"}));
  for (int i = 0; i < 5; ++i) mixed.push_back(doc({"cc", "dd"}));
  CHECK(key_bigrams(mixed, 1, 2) == RankedTerms{{"aa bb", 7}, {"cc dd", 5}});
}
