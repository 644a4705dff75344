#pragma once

// Comparison of decoded SYNOP rows with the reference decoder's output.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "crisis_pulse/synop/climate_frame.hpp"
#include "crisis_pulse/synop/report.hpp"
#include "crisis_pulse/util/digest.hpp"
#include "crisis_pulse/util/time.hpp"

namespace golden {

struct Outcome {
  std::size_t rows = 0;
  std::vector<std::string> mismatches;
};

inline bool close(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

// Temperatures and pressure within 0.05, wind within 0.01 km/h, RH within
// 0.5 percentage points, precipitation exact including the trace flag.
inline Outcome compare(const std::string& bulletin_path, const std::string& expected_path) {
  using namespace crisis_pulse;
  Outcome out;
  const auto parsed = synop::parse_bulletin(read_file(bulletin_path));
  const auto got = synop::observations_frame(parsed.reports);
  const auto want = synop::climate_from_csv(read_file(expected_path));
  out.rows = got.rows.size();
  if (got.rows.size() != want.rows.size()) {
    out.mismatches.push_back("row count " + std::to_string(got.rows.size()) + " vs " +
                             std::to_string(want.rows.size()));
    return out;
  }
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    const auto& g = got.rows[i];
    const auto& w = want.rows[i];
    const std::string where = g.station_id + " " + format_iso8601(g.observed_at) + ": ";
    if (g.station_id != w.station_id || g.observed_at != w.observed_at) out.mismatches.push_back(where + "key");
    if (!close(g.wind_speed_kmh, w.wind_speed_kmh, 0.01)) out.mismatches.push_back(where + "wind");
    if (!close(g.max_temp_c, w.max_temp_c, 0.05)) out.mismatches.push_back(where + "tmax");
    if (!close(g.avg_temp_c, w.avg_temp_c, 0.05)) out.mismatches.push_back(where + "tavg");
    if (!close(g.rel_humidity_pct, w.rel_humidity_pct, 0.5)) out.mismatches.push_back(where + "rh");
    if (!close(g.pressure_hpa, w.pressure_hpa, 0.05)) out.mismatches.push_back(where + "pressure");
    if (g.precip.has_value() != w.precip.has_value() ||
        (g.precip && (g.precip->mm != w.precip->mm || g.precip->trace != w.precip->trace ||
                      g.precip->period_code != w.precip->period_code))) {
      out.mismatches.push_back(where + "precip");
    }
  }
  return out;
}

}  // namespace golden
