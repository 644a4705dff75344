#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/text/message.hpp"
#include "crisis_pulse/util/time.hpp"

namespace crisis_pulse::align {

struct ActivityPoint {
  UtcTime bucket_start{};
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> per_label;  // every series label, zero-filled

  friend bool operator==(const ActivityPoint&, const ActivityPoint&) = default;
};

struct ActivitySeries {
  std::chrono::seconds bucket_width{3600};
  std::vector<std::string> labels;  // sorted
  std::vector<ActivityPoint> points;

  friend bool operator==(const ActivitySeries&, const ActivitySeries&) = default;
};

// Counts messages per bucket. Messages missing from `labels` count toward the
// total only. Empty buckets inside the observed span are emitted as zeros.
ActivitySeries bucket_activity(const std::vector<text::RawMessage>& msgs,
                               const std::map<std::string, std::string>& labels,
                               std::chrono::seconds bucket_width = std::chrono::hours(1));

// bucket_start,total,<label>... ; the width is carried in a comment line.
std::string activity_to_csv(const ActivitySeries& series);
ActivitySeries activity_from_csv(std::string_view text);

}  // namespace crisis_pulse::align
