#include "crisis_pulse/pipeline/report.hpp"

#include <json.hpp>
#include <sstream>

#include "crisis_pulse/classify/filter.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::pipeline {

std::string format_count(std::uint64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i + 3 - lead) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string format_percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return "n/a";
  const std::int64_t permille = classify::share_permille(part, whole);
  return std::to_string(permille / 10) + "." + std::to_string(permille % 10) + "%";
}

std::int64_t rounded_percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return 0;
  return static_cast<std::int64_t>((200 * part + whole) / (2 * whole));
}

namespace {

std::string pretty_category(const std::string& c) {
  if (c == classify::kDisaster) return "disaster";
  if (c == classify::kDisasterMedical) return "disaster and medical";
  if (c == classify::kDisasterHumanitarian) return "disaster and humanitarian";
  return c;
}

std::string fixed(double v, int places) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  os << v;
  return os.str();
}

}  // namespace

std::string render_text(const RunReport& r) {
  std::ostringstream os;
  os << "crisis-pulse run report\n\n";

  os << "== Messages ==\n";
  os << "Ingested messages: " << format_count(r.total_messages) << "\n";
  os << "Rejected input lines: " << format_count(r.rejected_lines) << "\n";
  os << "Classifier: " << r.classifier_source;
  if (r.fallback_reason) os << " (fallback: " << *r.fallback_reason << ")";
  os << "\n\n";

  os << "== Sentiment and categories ==\n";
  os << "The sentiment analysis classifier identified " << format_count(r.positive_messages)
     << " positive messages out of the " << format_count(r.total_messages) << " messages ("
     << format_percent(r.positive_messages, r.total_messages) << ").\n";
  for (const auto& c : r.categories) {
    os << "  " << pretty_category(c.category) << ": " << format_count(c.count) << " messages, "
       << format_count(c.positive) << " positive (" << format_percent(c.positive, c.count) << ")\n";
  }
  os << "Known-account flags: " << format_count(r.known_account_flags) << " ("
     << format_count(r.known_account_outside_disaster) << " not in the disaster set)\n\n";

  os << "== Top terms ==\n";
  for (const auto& [term, count] : r.term_frequencies) os << "  " << term << "\t" << count << "\n";
  os << "\n== Key bigrams ==\n";
  for (const auto& [bigram, count] : r.key_bigrams) os << "  " << bigram << "\t" << count << "\n";

  os << "\n== Topics ==\n";
  if (!r.topics_present) {
    os << "  (topic modelling disabled)\n";
  }
  for (const auto& t : r.topics) {
    os << "  topic " << t.topic << " (" << format_count(t.documents) << " messages):";
    for (const auto& [term, w] : t.terms) os << " " << term << "(" << fixed(w, 4) << ")";
    os << "\n";
  }

  os << "\n== Behavioural indicators (dominant label counts; undecided = no lexicon evidence) ==\n";
  for (const auto& [indicator, labels] : r.behavioral) {
    os << "  " << indicator << ":";
    for (const auto& [label, n] : labels) os << " " << label << "=" << n;
    os << "\n";
  }

  os << "\n== Climate ==\n";
  os << "  observations: " << format_count(r.synop_rows) << ", stations:";
  for (const auto& s : r.synop_stations) os << " " << s;
  os << "\n  malformed messages: " << r.synop_malformed << ", duplicates: " << r.synop_duplicates
     << ", sanity rejections: " << r.synop_sanity_rejections << "\n";

  os << "\n== Aligned frame ==\n";
  if (!r.aligned_present) {
    os << "  (not available)\n";
  } else {
    os << "  points: " << r.aligned_points << " of " << r.aligned_candidates << " candidate buckets (dropped "
       << r.aligned_dropped << ")\n";
    if (!r.aligned_first.empty()) os << "  span: " << r.aligned_first << " .. " << r.aligned_last << "\n";
    os << "  series:";
    for (const auto& s : r.aligned_series) os << " " << s;
    os << "\n";
  }

  os << "\n== Correlations (Pearson r) ==\n";
  for (const auto& c : r.correlations) {
    os << "  " << c.activity << " ~ " << c.variable << ": " << (c.r ? fixed(*c.r, 4) : std::string("n/a")) << "\n";
  }
  return os.str();
}

std::string render_json(const RunReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["messages"] = {{"total", r.total_messages}, {"rejected_lines", r.rejected_lines}};
  j["classifier"] = {{"source", r.classifier_source},
                     {"fallback_reason", r.fallback_reason ? ordered_json(*r.fallback_reason) : ordered_json()}};
  j["positive"] = {{"count", r.positive_messages},
                   {"total", r.total_messages},
                   {"percent", format_percent(r.positive_messages, r.total_messages)}};
  auto& cats = j["categories"] = ordered_json::array();
  for (const auto& c : r.categories) {
    cats.push_back({{"category", c.category},
                    {"count", c.count},
                    {"positive", c.positive},
                    {"percent", format_percent(c.positive, c.count)}});
  }
  j["known_accounts"] = {{"flagged", r.known_account_flags}, {"outside_disaster", r.known_account_outside_disaster}};
  auto ranked = [](const corpus::RankedTerms& terms) {
    ordered_json a = ordered_json::array();
    for (const auto& [t, n] : terms) a.push_back({{"term", t}, {"count", n}});
    return a;
  };
  j["term_frequencies"] = ranked(r.term_frequencies);
  j["key_bigrams"] = ranked(r.key_bigrams);
  if (r.topics_present) {
    auto& topics = j["topics"] = ordered_json::array();
    for (const auto& t : r.topics) {
      ordered_json terms = ordered_json::array();
      for (const auto& [term, w] : t.terms) terms.push_back({{"term", term}, {"weight", w}});
      topics.push_back({{"topic", t.topic}, {"documents", t.documents}, {"terms", terms}});
    }
  } else {
    j["topics"] = nullptr;
  }
  j["behavioral"] = r.behavioral;
  j["climate"] = {{"observations", r.synop_rows},
                  {"stations", r.synop_stations},
                  {"malformed_messages", r.synop_malformed},
                  {"duplicates", r.synop_duplicates},
                  {"sanity_rejections", r.synop_sanity_rejections}};
  if (r.aligned_present) {
    j["aligned"] = {{"points", r.aligned_points},
                    {"dropped", r.aligned_dropped},
                    {"candidates", r.aligned_candidates},
                    {"first", r.aligned_first},
                    {"last", r.aligned_last},
                    {"series", r.aligned_series}};
  } else {
    j["aligned"] = nullptr;
  }
  auto& corr = j["correlations"] = ordered_json::array();
  for (const auto& c : r.correlations) {
    corr.push_back({{"activity", c.activity}, {"variable", c.variable}, {"r", c.r ? ordered_json(*c.r) : ordered_json()}});
  }
  return j.dump(2) + "\n";
}

}  // namespace crisis_pulse::pipeline
