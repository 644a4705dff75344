#include "crisis_pulse/align/align.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "crisis_pulse/error.hpp"

namespace crisis_pulse::align {

const Series* AlignedFrame::find(std::string_view name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

struct Mean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> value() const { return n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt; }
};

}  // namespace

AlignedFrame align_frames(const ActivitySeries& activity, const synop::ClimateFrame& climate,
                          const std::vector<std::string>& variables, StationAggregation) {
  for (const auto& v : variables) {
    if (!synop::is_climate_variable(v)) throw ConfigError("unknown climate variable '" + v + "'");
  }
  const auto width = activity.bucket_width;
  if (width.count() <= 0) throw ConfigError("bucket width must be positive");
  if (activity.points.empty() || climate.rows.empty()) {
    throw NoOverlap("activity and climate series do not overlap (one of them is empty)");
  }

  UtcTime act_lo = activity.points.front().bucket_start, act_hi = act_lo;
  for (const auto& p : activity.points) {
    act_lo = std::min(act_lo, p.bucket_start);
    act_hi = std::max(act_hi, p.bucket_start);
  }
  UtcTime cl_lo = bucket_floor(climate.rows.front().observed_at, width), cl_hi = cl_lo;
  for (const auto& r : climate.rows) {
    const UtcTime b = bucket_floor(r.observed_at, width);
    cl_lo = std::min(cl_lo, b);
    cl_hi = std::max(cl_hi, b);
  }
  const UtcTime lo = std::max(bucket_floor(act_lo, width), cl_lo);
  const UtcTime hi = std::min(bucket_floor(act_hi, width), cl_hi);
  if (hi < lo) {
    throw NoOverlap("activity [" + format_iso8601(act_lo) + ", " + format_iso8601(act_hi) + "] and climate [" +
                    format_iso8601(cl_lo) + ", " + format_iso8601(cl_hi) + "] do not overlap");
  }

  std::map<UtcTime, const ActivityPoint*> by_bucket;
  for (const auto& p : activity.points) by_bucket.emplace(bucket_floor(p.bucket_start, width), &p);

  // bucket -> variable -> station -> mean of that station's reports
  std::map<UtcTime, std::vector<std::map<std::string, Mean>>> climate_buckets;
  for (const auto& r : climate.rows) {
    const UtcTime b = bucket_floor(r.observed_at, width);
    if (b < lo || b > hi) continue;
    auto& per_var = climate_buckets[b];
    per_var.resize(variables.size());
    for (std::size_t v = 0; v < variables.size(); ++v) {
      if (auto value = synop::climate_value(r, variables[v])) per_var[v][r.station_id].add(*value);
    }
  }

  AlignedFrame frame;
  frame.series.push_back({"activity_total", {}});
  for (const auto& l : activity.labels) frame.series.push_back({"activity_" + l, {}});
  for (const auto& v : variables) frame.series.push_back({v, {}});
  const std::size_t first_var = 1 + activity.labels.size();

  std::vector<double> row(frame.series.size());
  for (UtcTime b = lo; b <= hi; b += width) {
    ++frame.candidates;
    bool complete = false;
    if (auto a = by_bucket.find(b); a != by_bucket.end()) {
      complete = true;
      row[0] = static_cast<double>(a->second->total);
      for (std::size_t l = 0; l < activity.labels.size(); ++l) {
        auto it = a->second->per_label.find(activity.labels[l]);
        row[1 + l] = it == a->second->per_label.end() ? 0.0 : static_cast<double>(it->second);
      }
      const auto c = climate_buckets.find(b);
      for (std::size_t v = 0; v < variables.size() && complete; ++v) {
        Mean across;
        if (c != climate_buckets.end()) {
          for (const auto& [station, m] : c->second[v]) across.add(*m.value());
        }
        if (auto value = across.value()) {
          row[first_var + v] = *value;
        } else {
          complete = false;
        }
      }
    }
    if (!complete) {
      ++frame.dropped;
      continue;
    }
    frame.timestamps.push_back(b);
    for (std::size_t s = 0; s < row.size(); ++s) frame.series[s].values.push_back(row[s]);
  }
  return frame;
}

}  // namespace crisis_pulse::align
