#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/synop/report.hpp"

namespace crisis_pulse::synop {

// The six climate variables, in canonical order.
inline constexpr const char* kClimateVariables[] = {"wind_kmh", "tmax_c", "tavg_c", "rh_pct", "precip_mm",
                                                    "pressure_hpa"};

bool is_climate_variable(std::string_view name);

// Value of a named climate variable; nullopt when absent or name unknown.
std::optional<double> climate_value(const SynopObservation& obs, std::string_view variable);

struct ClimateFrame {
  std::vector<SynopObservation> rows;  // sorted by (observed_at, station_id)
  std::set<std::string> stations;
  std::size_t duplicates = 0;
  std::size_t malformed_messages = 0;
  std::size_t sanity_rejections = 0;
  std::size_t malformed_groups = 0;
};

// Decodes every report; the first of several (station, time) reports wins.
ClimateFrame observations_frame(const std::vector<SynopReport>& reports);

// Keeps only rows from the listed stations; an empty list keeps everything.
ClimateFrame restrict_stations(const ClimateFrame& frame, const std::vector<std::string>& stations);

// station,iso_time,wind_kmh,tmax_c,tavg_c,rh_pct,precip_mm,trace,precip_period,pressure_hpa
std::string climate_to_csv(const ClimateFrame& frame);
ClimateFrame climate_from_csv(std::string_view text);

}  // namespace crisis_pulse::synop
