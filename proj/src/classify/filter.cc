#include "crisis_pulse/classify/filter.hpp"

#include <algorithm>
#include <cctype>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::classify {

std::string_view to_string(SetSource source) {
  switch (source) {
    case SetSource::kBaseline:
      return "baseline";
    case SetSource::kRemote:
      return "remote";
    case SetSource::kKnownAccount:
      return "known_account";
  }
  return "unknown";
}

namespace {

struct Decisions {
  std::vector<bool> disaster, medical, humanitarian;
  std::vector<std::string> sentiment;
};

Decisions baseline_decisions(std::span<const text::TokenizedDoc> docs, const LexiconSet& lexicons,
                             double threshold) {
  Decisions d;
  for (const auto& doc : docs) {
    d.disaster.push_back(classify_binary(doc, "disaster", lexicons, threshold).related);
    d.medical.push_back(classify_binary(doc, "medical", lexicons, threshold).related);
    d.humanitarian.push_back(classify_binary(doc, "humanitarian", lexicons, threshold).related);
    d.sentiment.push_back(classify_sentiment(doc, lexicons).dominant);
  }
  return d;
}

Decisions remote_decisions(std::span<const text::RawMessage> msgs, const RemoteEndpoint& endpoint) {
  const std::vector<std::string> tasks{"binary:disaster", "binary:medical", "binary:humanitarian",
                                       std::string(kSentiment)};
  std::vector<std::string> texts;
  texts.reserve(msgs.size());
  for (const auto& m : msgs) texts.push_back(m.text);
  const auto results = remote_classify_batch(texts, tasks, endpoint);
  Decisions d;
  for (const auto& r : results) {
    d.disaster.push_back(r.at("binary:disaster").dominant == "related");
    d.medical.push_back(r.at("binary:medical").dominant == "related");
    d.humanitarian.push_back(r.at("binary:humanitarian").dominant == "related");
    d.sentiment.push_back(r.at(std::string(kSentiment)).dominant);
  }
  return d;
}

}  // namespace

FilterResult filter_pipeline(std::span<const text::RawMessage> msgs, std::span<const text::TokenizedDoc> docs,
                             const LexiconSet& lexicons, const ClassifierConfig& config) {
  if (msgs.size() != docs.size()) throw std::invalid_argument("filter_pipeline: msgs and docs differ in length");
  FilterResult result;
  Decisions decisions;
  if (config.mode == ClassifierConfig::Mode::kRemote) {
    try {
      decisions = remote_decisions(msgs, config.endpoint);
      result.source = SetSource::kRemote;
    } catch (const RemoteUnavailable& e) {
      if (!config.fallback_to_baseline) throw;
      result.fallback_reason = e.what();
      decisions = baseline_decisions(docs, lexicons, config.binary_threshold);
      result.source = SetSource::kBaseline;
    }
  } else {
    decisions = baseline_decisions(docs, lexicons, config.binary_threshold);
  }

  for (auto name : {kDisaster, kDisasterMedical, kDisasterHumanitarian, kPositive}) {
    result.sets[std::string(name)] = FilteredSet{std::string(name), {}, result.source};
  }
  auto& disaster = result.sets[std::string(kDisaster)].message_ids;
  auto& medical = result.sets[std::string(kDisasterMedical)].message_ids;
  auto& humanitarian = result.sets[std::string(kDisasterHumanitarian)].message_ids;
  auto& positive = result.sets[std::string(kPositive)].message_ids;
  for (size_t i = 0; i < msgs.size(); ++i) {
    if (decisions.disaster[i]) {
      disaster.push_back(msgs[i].id);
      if (decisions.medical[i]) medical.push_back(msgs[i].id);
      if (decisions.humanitarian[i]) humanitarian.push_back(msgs[i].id);
    }
    if (decisions.sentiment[i] == "positive") positive.push_back(msgs[i].id);
  }
  result.sentiment = std::move(decisions.sentiment);
  return result;
}

AccountSet parse_accounts(std::string_view contents) {
  AccountSet accounts;
  for (const auto& raw : split_lines(contents)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty() && line.front() == '@') line.remove_prefix(1);
    if (line.empty()) continue;
    std::string handle(line);
    std::transform(handle.begin(), handle.end(), handle.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    accounts.insert(std::move(handle));
  }
  return accounts;
}

AccountSet load_accounts(const std::filesystem::path& path) { return parse_accounts(read_file(path)); }

FilteredSet flag_known_accounts(std::span<const text::RawMessage> msgs, const AccountSet& accounts) {
  FilteredSet set{std::string(kDisaster), {}, SetSource::kKnownAccount};
  for (const auto& m : msgs) {
    std::string author = m.author;
    if (!author.empty() && author.front() == '@') author.erase(0, 1);
    std::transform(author.begin(), author.end(), author.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (accounts.count(author)) set.message_ids.push_back(m.id);
  }
  return set;
}

std::int64_t share_permille(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) throw std::invalid_argument("share_permille: empty set");
  // round(1000 * part / whole) half up, in integers
  return static_cast<std::int64_t>((2000 * part + whole) / (2 * whole));
}

}  // namespace crisis_pulse::classify
