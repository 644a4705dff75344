#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crisis_pulse/align/activity.hpp"
#include "crisis_pulse/synop/climate_frame.hpp"

namespace crisis_pulse::align {

struct Series {
  std::string name;
  std::vector<double> values;

  friend bool operator==(const Series&, const Series&) = default;
};

// Every series has exactly timestamps.size() values and none is absent.
struct AlignedFrame {
  std::vector<UtcTime> timestamps;
  std::vector<Series> series;  // declaration order
  std::size_t dropped = 0;
  std::size_t candidates = 0;

  const Series* find(std::string_view name) const;
};

enum class StationAggregation { kMean };

// Series order: activity_total, activity_<label> for each sorted label, then
// the requested climate variables in the order given. A candidate bucket lies
// in both the activity span and the climate span; it is dropped from every
// series when activity or any requested variable is absent there.
// Throws NoOverlap when there is no candidate bucket and ConfigError for an
// unknown variable name.
AlignedFrame align_frames(const ActivitySeries& activity, const synop::ClimateFrame& climate,
                          const std::vector<std::string>& variables,
                          StationAggregation station_agg = StationAggregation::kMean);

}  // namespace crisis_pulse::align
