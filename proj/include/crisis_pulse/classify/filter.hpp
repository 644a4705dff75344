#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/classify/baseline.hpp"
#include "crisis_pulse/classify/remote.hpp"
#include "crisis_pulse/text/message.hpp"
#include "crisis_pulse/text/preprocess.hpp"

namespace crisis_pulse::classify {

inline constexpr std::string_view kDisaster = "disaster";
inline constexpr std::string_view kDisasterMedical = "disaster_medical";
inline constexpr std::string_view kDisasterHumanitarian = "disaster_humanitarian";
inline constexpr std::string_view kPositive = "positive";

enum class SetSource { kBaseline, kRemote, kKnownAccount };
std::string_view to_string(SetSource source);

// Message ids selected by one classifier decision, in ingestion order.
struct FilteredSet {
  std::string category;
  std::vector<std::string> message_ids;
  SetSource source = SetSource::kBaseline;
};

struct ClassifierConfig {
  enum class Mode { kBaseline, kRemote };
  Mode mode = Mode::kBaseline;
  RemoteEndpoint endpoint;
  bool fallback_to_baseline = false;
  double binary_threshold = kDefaultBinaryThreshold;
};

struct FilterResult {
  // disaster, disaster_medical, disaster_humanitarian, positive
  std::map<std::string, FilteredSet> sets;
  // Dominant sentiment label per message, aligned with the input order.
  std::vector<std::string> sentiment;
  SetSource source = SetSource::kBaseline;
  std::optional<std::string> fallback_reason;  // set when the remote failed and baseline took over
};

// Medical and humanitarian sets are always subsets of the disaster set;
// positive is taken over every message. docs[i] must be the preprocessed form
// of msgs[i]. RemoteUnavailable propagates unless fallback is enabled.
FilterResult filter_pipeline(std::span<const text::RawMessage> msgs, std::span<const text::TokenizedDoc> docs,
                             const LexiconSet& lexicons, const ClassifierConfig& config);

using AccountSet = std::set<std::string, std::less<>>;

// Handles one per line, '#' comments, optional leading '@', case-folded.
AccountSet parse_accounts(std::string_view contents);
AccountSet load_accounts(const std::filesystem::path& path);

// Case-insensitive exact author match; source kKnownAccount, category
// "disaster" (candidate key messages merged into the disaster view at report
// time).
FilteredSet flag_known_accounts(std::span<const text::RawMessage> msgs, const AccountSet& accounts);

// round(100 * part / whole, 1), exact integer rounding half up, in tenths of a
// percent. whole must be > 0.
std::int64_t share_permille(std::uint64_t part, std::uint64_t whole);

}  // namespace crisis_pulse::classify
