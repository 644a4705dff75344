#include <doctest.h>

#include <random>

#include "crisis_pulse/classify/baseline.hpp"
#include "crisis_pulse/classify/filter.hpp"
#include "crisis_pulse/error.hpp"
#include "crisis_pulse/text/preprocess.hpp"

using namespace crisis_pulse;
using namespace crisis_pulse::classify;

namespace {

text::TokenizedDoc doc_of(std::vector<std::string> tokens) {
  text::TokenizedDoc d;
  d.message_id = "m";
  d.tokens = std::move(tokens);
  return d;
}

// A small hand-written lexicon set so the expected outcomes can be worked out
// by hand.
LexiconSet hand_lexicons() {
  LexiconSet set;
  set.indicators["sentiment"].words = {{"positive", parse_word_list("great\nwonderful\n")},
                                       {"negative", parse_word_list("awful\nflood\n")}};
  set.indicators["emotion"].words = {{"angry", parse_word_list("angry\nfurious\nrage\n")},
                                     {"happy", parse_word_list("happy\n")}};
  set.indicators["intent"].words = {{"news", parse_word_list("report\n")}};
  set.indicators["abuse"].words = {};
  set.indicators["sarcasm"].words = {{"sarcastic", parse_word_list("yeah right\n")}};
  set.indicators["phase"].words = {{"preparedness", parse_word_list("sandbag\nprepare\nplan\n")},
                                   {"response", parse_word_list("rescue\n")}};
  set.categories["disaster"] = parse_word_list("flood\nriver\nheat\n");
  set.categories["medical"] = parse_word_list("hospital\n");
  set.categories["humanitarian"] = parse_word_list("donate\n");
  return set;
}

void check_scores(const ClassScores& s) {
  const auto& labels = labels_for(s.indicator);
  REQUIRE(s.scores.size() == labels.size());
  double total = 0;
  for (const auto& label : labels) {
    REQUIRE(s.scores.count(label));
    CHECK(s.scores.at(label) >= 0.0);
    CHECK(s.scores.at(label) <= 1.0);
    total += s.scores.at(label);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.scores.count(s.dominant));
}

text::RawMessage msg(std::string id, std::string author, std::string body) {
  text::RawMessage m;
  m.id = std::move(id);
  m.author = std::move(author);
  m.text = std::move(body);
  m.timestamp = *make_utc(2020, 6, 25, 12, 0, 0);
  return m;
}

}  // namespace

TEST_CASE("label sets are closed and sorted") {
  CHECK(labels_for("sentiment") == std::vector<std::string>{"negative", "neutral", "positive"});
  CHECK(labels_for("emotion").size() == 6);
  CHECK(labels_for("intent").size() == 5);
  CHECK(labels_for("abuse") == std::vector<std::string>{"abusive", "hate_speech", "neither"});
  CHECK(labels_for("sarcasm") == std::vector<std::string>{"non_sarcastic", "sarcastic"});
  CHECK(labels_for("phase").size() == 6);
  CHECK(labels_for("binary:disaster") == std::vector<std::string>{"not_related", "related"});
  CHECK(labels_for("mood").empty());
  CHECK_FALSE(is_known_indicator("binary:weather"));
  CHECK(behavioral_indicators().size() == 5);
}

TEST_CASE("softened scores") {
  auto s = softened_scores("sentiment", {{"positive", 2}});
  CHECK(s.scores["positive"] == doctest::Approx(3.0 / 5.0));
  CHECK(s.scores["negative"] == doctest::Approx(1.0 / 5.0));
  CHECK(s.dominant == "positive");
  auto tie = softened_scores("emotion", {{"sad", 1}, {"fear", 1}});
  CHECK(tie.dominant == "fear");
}

TEST_CASE("sentiment examples") {
  const auto lex = hand_lexicons();
  auto pos = classify_sentiment(doc_of({"great", "wonder"}), lex);
  CHECK(pos.dominant == "positive");
  CHECK(pos.scores["positive"] == doctest::Approx(3.0 / 5.0));
  check_scores(pos);
  auto none = classify_sentiment(doc_of({"tree", "sky"}), lex);
  CHECK(none.dominant == "neutral");
  for (const auto& [l, v] : none.scores) CHECK(v == doctest::Approx(1.0 / 3.0));
  auto tie = classify_sentiment(doc_of({"great", "flood"}), lex);
  CHECK(tie.dominant == "neutral");
  auto neg = classify_sentiment(doc_of({"flood", "flood", "great"}), lex);
  CHECK(neg.dominant == "negative");
  CHECK_THROWS_AS(classify_sentiment(doc_of({}), LexiconSet{}), LexiconMissing);
}

TEST_CASE("binary examples") {
  const auto lex = hand_lexicons();
  auto empty = classify_binary(doc_of({}), "disaster", lex);
  CHECK_FALSE(empty.related);
  CHECK(empty.score == 0.0);
  auto all = classify_binary(doc_of({"flood", "river"}), "disaster", lex);
  CHECK(all.related);
  CHECK(all.score == 1.0);
  std::vector<std::string> forty(39, "tree");
  forty.push_back("flood");
  auto one = classify_binary(doc_of(forty), "disaster", lex, 0.05);
  CHECK_FALSE(one.related);
  CHECK(one.score == doctest::Approx(0.025));
  std::vector<std::string> twenty(19, "tree");
  twenty.push_back("flood");
  CHECK(classify_binary(doc_of(twenty), "disaster", lex, 0.05).related);
  CHECK_THROWS_AS(classify_binary(doc_of({"x"}), "weather", lex), LexiconMissing);
}

TEST_CASE("behavioral profile examples") {
  const auto lex = hand_lexicons();
  auto empty = behavioral_profile(doc_of({}), lex);
  REQUIRE(empty.size() == 5);
  for (const auto& [ind, s] : empty) {
    check_scores(s);
    const double u = 1.0 / static_cast<double>(labels_for(ind).size());
    for (const auto& [l, v] : s.scores) CHECK(v == doctest::Approx(u));
    if (ind != "sentiment") CHECK(s.dominant == labels_for(ind).front());
  }
  auto angry = behavioral_profile(doc_of({"angri", "furious", "rage"}), lex);
  CHECK(angry.size() == 5);
  CHECK(angry["emotion"].dominant == "angry");
  LexiconSet partial = lex;
  partial.indicators.erase("sarcasm");
  CHECK_THROWS_AS(behavioral_profile(doc_of({}), partial), LexiconMissing);
}

TEST_CASE("phase examples") {
  const auto lex = hand_lexicons();
  auto prep = phase_categorize(doc_of({"sandbag", "prepar", "plan"}), lex);
  CHECK(prep.dominant == "preparedness");
  check_scores(prep);
  auto none = phase_categorize(doc_of({"tree"}), lex);
  for (const auto& [l, v] : none.scores) CHECK(v == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("dominant label ignores case and spacing of the raw text") {
  const auto lex = LexiconSet::load(CRISIS_PULSE_DATA "/lexicons");
  auto a = text::preprocess_document(msg("1", "a", "What a GREAT   relief, thanks all"));
  auto b = text::preprocess_document(msg("1", "a", "what a great relief,   Thanks ALL"));
  CHECK(classify_sentiment(a, lex) == classify_sentiment(b, lex));
  CHECK(behavioral_profile(a, lex) == behavioral_profile(b, lex));
}

TEST_CASE("shipped lexicons load every indicator and category") {
  const auto lex = LexiconSet::load(CRISIS_PULSE_DATA "/lexicons");
  for (const auto& ind : behavioral_indicators()) CHECK(lex.indicators.count(ind));
  CHECK(lex.indicators.count("phase"));
  for (const auto& cat : binary_categories()) CHECK_FALSE(lex.categories.at(cat).empty());
  CHECK(lex.indicators.at("phase").words.at("preparedness").count("sandbag"));
  CHECK(lex.indicators.at("sentiment").words.at("positive").count("wonder"));
}

TEST_CASE("random documents obey the score and subset laws") {
  const auto lex = LexiconSet::load(CRISIS_PULSE_DATA "/lexicons");
  std::vector<std::string> pool;
  for (const auto& [cat, words] : lex.categories) pool.insert(pool.end(), words.begin(), words.end());
  for (const auto& [label, words] : lex.indicators.at("sentiment").words)
    pool.insert(pool.end(), words.begin(), words.end());
  for (const char* filler : {"tree", "bus", "citi", "morn", "lunch", "park"}) pool.push_back(filler);
  std::mt19937_64 rng(3);
  std::vector<text::RawMessage> msgs;
  std::vector<text::TokenizedDoc> docs;
  for (int i = 0; i < 300; ++i) {
    auto d = doc_of({});
    d.message_id = std::to_string(i);
    const size_t len = rng() % 12;
    for (size_t j = 0; j < len; ++j) d.tokens.push_back(pool[rng() % pool.size()]);
    for (const auto& [ind, s] : behavioral_profile(d, lex)) check_scores(s);
    check_scores(phase_categorize(d, lex));
    CHECK(behavioral_profile(d, lex) == behavioral_profile(d, lex));
    msgs.push_back(msg(d.message_id, "u", ""));
    docs.push_back(std::move(d));
  }
  auto result = filter_pipeline(msgs, docs, lex, ClassifierConfig{});
  REQUIRE(result.sets.size() == 4);
  const auto& disaster = result.sets.at("disaster").message_ids;
  CHECK_FALSE(disaster.empty());
  for (const char* sub : {"disaster_medical", "disaster_humanitarian"}) {
    for (const auto& id : result.sets.at(sub).message_ids)
      CHECK(std::find(disaster.begin(), disaster.end(), id) != disaster.end());
  }
  // Ingestion order is kept.
  for (const auto& [name, set] : result.sets)
    for (size_t i = 1; i < set.message_ids.size(); ++i)
      CHECK(std::stoi(set.message_ids[i - 1]) < std::stoi(set.message_ids[i]));
  CHECK(result.sentiment.size() == msgs.size());
}

TEST_CASE("empty input gives four empty sets") {
  auto result = filter_pipeline({}, {}, hand_lexicons(), ClassifierConfig{});
  REQUIRE(result.sets.size() == 4);
  for (const auto& [name, set] : result.sets) CHECK(set.message_ids.empty());
  CHECK(result.source == SetSource::kBaseline);
}

TEST_CASE("remote mode without fallback propagates and with fallback degrades") {
  ClassifierConfig config;
  config.mode = ClassifierConfig::Mode::kRemote;
  config.endpoint.url = "http://127.0.0.1:1";
  config.endpoint.timeout = std::chrono::milliseconds(500);
  std::vector<text::RawMessage> msgs{msg("1", "a", "flood")};
  std::vector<text::TokenizedDoc> docs{doc_of({"flood"})};
  CHECK_THROWS_AS(filter_pipeline(msgs, docs, hand_lexicons(), config), RemoteUnavailable);
  config.fallback_to_baseline = true;
  auto result = filter_pipeline(msgs, docs, hand_lexicons(), config);
  CHECK(result.fallback_reason.has_value());
  CHECK(result.source == SetSource::kBaseline);
  CHECK(result.sets.at("disaster").message_ids == std::vector<std::string>{"1"});
}

TEST_CASE("known accounts") {
  auto accounts = parse_accounts("# stakeholders\nmetoffice\n@EnvAgency  \n\n  BBCWeather # forecasts\n");
  CHECK(accounts == AccountSet{"bbcweather", "envagency", "metoffice"});
  std::vector<text::RawMessage> msgs{msg("1", "MetOffice", "x"), msg("2", "someone", "y"),
                                     msg("3", "@envagency", "z")};
  auto flagged = flag_known_accounts(msgs, accounts);
  CHECK(flagged.message_ids == std::vector<std::string>{"1", "3"});
  CHECK(flagged.source == SetSource::kKnownAccount);
  CHECK(flag_known_accounts(msgs, AccountSet{}).message_ids.empty());
  CHECK(load_accounts(CRISIS_PULSE_DATA "/accounts/stakeholders.txt").count("metoffice"));
}

TEST_CASE("share arithmetic") {
  CHECK(share_permille(5871, 27096) == 217);
  CHECK(share_permille(31467, 99967) == 315);
  CHECK(share_permille(1, 8) == 125);  // 12.5 exactly
  CHECK(share_permille(1, 16) == 63);  // 6.25 rounds half up
  CHECK(share_permille(0, 5) == 0);
  CHECK(share_permille(5, 5) == 1000);
  CHECK_THROWS(share_permille(1, 0));
}
