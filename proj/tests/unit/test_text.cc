#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "crisis_pulse/text/message.hpp"
#include "crisis_pulse/text/normalize.hpp"
#include "crisis_pulse/text/porter_stemmer.hpp"
#include "crisis_pulse/text/preprocess.hpp"
#include "crisis_pulse/util/digest.hpp"

using namespace crisis_pulse;
using namespace crisis_pulse::text;

TEST_CASE("normalize examples") {
  CHECK(normalize("river rising") == "river rising");
  CHECK(normalize("") == "");
  CHECK(normalize("RT @BBCWeather: #FloodAlert River rising fast https://t.co/abc \xF0\x9F\x98\xB1") ==
        "river rising fast");
  CHECK(normalize("Flood &amp; storm!!!") == "flood storm");
}

TEST_CASE("normalize removal rules") {
  CHECK(normalize("<b>Severe</b> weather") == "severe weather");
  CHECK(normalize("see www.metoffice.gov.uk/warnings now") == "see now");
  CHECK(normalize("see http://x.y/z?a=1 now") == "see now");
  CHECK(normalize("Stay safe :) :-( everyone") == "stay safe everyone");
  CHECK(normalize("FAV this RT now") == "this now");
  // A handle ends at the first character outside [A-Za-z0-9_].
  CHECK(normalize("email@example.com") == "email com");
  CHECK(normalize("caf\xC3\xA9 open") == "caf open");
  CHECK(normalize("Storm&#39;s eye") == "storm s eye");
  CHECK(normalize("Flood#warning") == "flood");
  CHECK(normalize("heat \xE2\x98\x80\xEF\xB8\x8F wave") == "heat wave");
  CHECK(normalize("ARTICLE rt") == "article");
}

TEST_CASE("normalize output alphabet and idempotency") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {
      "RT",    "@user_1", "#Tag",  "http://a.b/c", "t.co/xyz", "www.x.org", ":)", ";-)", "&amp;", "&lt;b&gt;",
      "<i>",   "</i>",    "River", "FLOOD",        "42",       "!!!",       "\xF0\x9F\x8C\x8A", "caf\xC3\xA9", "fav",
      "-",     "&#x1F600;", "a",   "rt:",          "@",        "#",         "&bogus;", "x&y"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      text += pieces[pick(rng)];
      text += (rng() % 3 == 0) ? "" : " ";
    }
    const std::string once = normalize(text);
    CAPTURE(text);
    CHECK(normalize(once) == once);
    for (char c : once) CHECK(((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' '));
    CHECK(once.find("  ") == std::string::npos);
    if (!once.empty()) {
      CHECK(once.front() != ' ');
      CHECK(once.back() != ' ');
    }
  }
}

TEST_CASE("decode_html_entities") {
  CHECK(decode_html_entities("a &amp; b &lt;c&gt; &quot;d&quot; &#65;&#x42;") == "a & b <c> \"d\" AB");
  CHECK(decode_html_entities("&unknown; stays") == "&unknown; stays");
}

TEST_CASE("tokenize examples") {
  const StopwordSet stop = {"the", "is"};
  CHECK(tokenize("the river is rising fast", stop) == std::vector<std::string>{"river", "rising", "fast"});
  CHECK(tokenize("", stop).empty());
  CHECK(tokenize("a an of", default_stopwords()).empty());
  CHECK(tokenize("go up now", {}, 2) == std::vector<std::string>{"go", "up", "now"});
}

TEST_CASE("stem examples") {
  CHECK(stem("november") == "novemb");
  CHECK(stem("extreme") == "extrem");
  CHECK(stem("warnings") == "warn");
  CHECK(stem("run") == "run");
  CHECK(stem("") == "");
  CHECK(stem("a1") == "a1");
}

TEST_CASE("stem agrees with the frozen reference list") {
  std::ifstream in(CRISIS_PULSE_FIXTURES "/porter_reference.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string word = line.substr(0, tab);
    const std::string expected = line.substr(tab + 1);
    CAPTURE(word);
    CHECK(stem(word) == expected);
    ++checked;
  }
  CHECK(checked > 1500);
}

TEST_CASE("preprocess_document examples") {
  RawMessage m{"1", *parse_iso8601("2020-11-12T10:00:00Z"), "someone", "Flooding in #London!", false};
  CHECK(preprocess_document(m).tokens == std::vector<std::string>{"flood"});
  m.text = "";
  CHECK(preprocess_document(m).tokens.empty());
  m.text = "severe flood warnings issued";
  const auto doc = preprocess_document(m);
  CHECK(doc.tokens == std::vector<std::string>{"sever", "flood", "warn", "issu"});
  CHECK(doc.message_id == "1");
  CHECK(doc.token_ids.empty());
}

TEST_CASE("built-in word lists match the shipped data files") {
  CHECK(parse_stopwords(read_file(CRISIS_PULSE_DATA "/stopwords_en.txt")) == default_stopwords());
  CHECK(parse_smileys(read_file(CRISIS_PULSE_DATA "/smileys.txt")) == default_smileys());
  CHECK(default_stopwords().count("the"));
  CHECK_FALSE(default_stopwords().count("flood"));
}

TEST_CASE("jsonl ingestion") {
  const std::string input =
      "{\"id\":\"a1\",\"created_at\":\"2020-11-12T10:00:00Z\",\"user\":{\"screen_name\":\"MetOffice\"},"
      "\"text\":\"Rain\",\"retweeted\":false}\n"
      "\n"
      "not json\n"
      "{\"id\":17,\"created_at\":\"2020-11-12T11:00:00+01:00\",\"user\":{\"screen_name\":\"x\"},\"text\":\"t\"}\n"
      "{\"id\":\"a1\",\"created_at\":\"2020-11-12T10:00:00Z\",\"user\":{\"screen_name\":\"y\"},\"text\":\"dup\"}\n"
      "{\"id\":\"b\",\"created_at\":\"soon\",\"user\":{\"screen_name\":\"y\"},\"text\":\"bad time\"}\n"
      "{\"id\":\"c\",\"created_at\":\"2020-11-12T10:00:00Z\",\"text\":\"no user\"}\n"
      "{\"id\":\"d\",\"created_at\":\"2020-11-12T10:00:00Z\",\"user\":{\"screen_name\":\"y\"},\"text\":\"\xff\"}\n";
  const auto r = parse_messages_jsonl(input);
  REQUIRE(r.messages.size() == 2);
  CHECK(r.messages[0].id == "a1");
  CHECK(r.messages[0].author == "MetOffice");
  CHECK(r.messages[1].id == "17");
  CHECK(format_iso8601(r.messages[1].timestamp) == "2020-11-12T10:00:00Z");
  REQUIRE(r.rejected.size() == 5);
  CHECK(r.rejected[0].line_number == 3);
  CHECK(r.rejected[1].line_number == 5);
  CHECK(r.rejected[4].line_number == 8);

  const auto again = parse_messages_jsonl(to_jsonl(r.messages));
  CHECK(again.rejected.empty());
  CHECK(to_jsonl(again.messages) == to_jsonl(r.messages));
}
