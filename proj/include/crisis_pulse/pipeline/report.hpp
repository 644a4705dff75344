#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crisis_pulse/corpus/term_stats.hpp"

namespace crisis_pulse::pipeline {

// 27096 -> "27,096"
std::string format_count(std::uint64_t n);

// round(100 * part / whole, 1) with halves rounded up, e.g. "21.7%".
// Returns "n/a" for an empty whole.
std::string format_percent(std::uint64_t part, std::uint64_t whole);

// Whole-number percentage, halves rounded up ("around 17%").
std::int64_t rounded_percent(std::uint64_t part, std::uint64_t whole);

struct CategoryLine {
  std::string category;
  std::uint64_t count = 0;
  std::uint64_t positive = 0;
};

struct TopicLine {
  std::size_t topic = 0;
  std::uint64_t documents = 0;
  std::vector<std::pair<std::string, double>> terms;
};

struct CorrelationLine {
  std::string activity;
  std::string variable;
  std::optional<double> r;  // absent when the series were degenerate
};

struct RunReport {
  std::uint64_t total_messages = 0;
  std::uint64_t rejected_lines = 0;
  std::uint64_t positive_messages = 0;
  std::string classifier_source;
  std::optional<std::string> fallback_reason;
  std::vector<CategoryLine> categories;  // disaster, disaster_medical, disaster_humanitarian

  std::uint64_t known_account_flags = 0;
  std::uint64_t known_account_outside_disaster = 0;

  corpus::RankedTerms term_frequencies;
  corpus::RankedTerms key_bigrams;

  bool topics_present = false;
  std::vector<TopicLine> topics;

  std::map<std::string, std::map<std::string, std::uint64_t>> behavioral;  // indicator -> label -> dominant count

  std::uint64_t synop_rows = 0;
  std::vector<std::string> synop_stations;
  std::uint64_t synop_malformed = 0;
  std::uint64_t synop_duplicates = 0;
  std::uint64_t synop_sanity_rejections = 0;

  bool aligned_present = false;
  std::uint64_t aligned_points = 0;
  std::uint64_t aligned_dropped = 0;
  std::uint64_t aligned_candidates = 0;
  std::vector<std::string> aligned_series;
  std::string aligned_first;
  std::string aligned_last;
  std::vector<CorrelationLine> correlations;
};

std::string render_text(const RunReport& report);
std::string render_json(const RunReport& report);

}  // namespace crisis_pulse::pipeline
