#include "crisis_pulse/synop/climate_frame.hpp"

#include <algorithm>
#include <charconv>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::synop {
namespace {

constexpr const char* kHeader =
    "station,iso_time,wind_kmh,tmax_c,tavg_c,rh_pct,precip_mm,trace,precip_period,pressure_hpa";

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> number_cell(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  auto v = parse_double(s);
  if (!v) throw FormatError("climate CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

bool is_climate_variable(std::string_view name) {
  return std::any_of(std::begin(kClimateVariables), std::end(kClimateVariables),
                     [&](const char* v) { return name == v; });
}

std::optional<double> climate_value(const SynopObservation& obs, std::string_view variable) {
  if (variable == "wind_kmh") return obs.wind_speed_kmh;
  if (variable == "tmax_c") return obs.max_temp_c;
  if (variable == "tavg_c") return obs.avg_temp_c;
  if (variable == "rh_pct") return obs.rel_humidity_pct;
  if (variable == "precip_mm") return obs.precip ? std::optional<double>(obs.precip->mm) : std::nullopt;
  if (variable == "pressure_hpa") return obs.pressure_hpa;
  return std::nullopt;
}

ClimateFrame observations_frame(const std::vector<SynopReport>& reports) {
  ClimateFrame frame;
  std::vector<SynopObservation> decoded;
  decoded.reserve(reports.size());
  for (const auto& r : reports) decoded.push_back(decode_report(r));
  std::stable_sort(decoded.begin(), decoded.end(), [](const SynopObservation& a, const SynopObservation& b) {
    if (a.observed_at != b.observed_at) return a.observed_at < b.observed_at;
    return a.station_id < b.station_id;
  });
  for (auto& obs : decoded) {
    if (!frame.rows.empty() && frame.rows.back().observed_at == obs.observed_at &&
        frame.rows.back().station_id == obs.station_id) {
      ++frame.duplicates;
      continue;
    }
    frame.sanity_rejections += obs.diagnostics.sanity_rejections;
    frame.malformed_groups += obs.diagnostics.malformed_groups;
    frame.stations.insert(obs.station_id);
    frame.rows.push_back(std::move(obs));
  }
  return frame;
}

ClimateFrame restrict_stations(const ClimateFrame& frame, const std::vector<std::string>& stations) {
  if (stations.empty()) return frame;
  ClimateFrame out = frame;
  out.rows.clear();
  out.stations.clear();
  for (const auto& obs : frame.rows) {
    if (std::find(stations.begin(), stations.end(), obs.station_id) == stations.end()) continue;
    out.stations.insert(obs.station_id);
    out.rows.push_back(obs);
  }
  return out;
}

std::string climate_to_csv(const ClimateFrame& frame) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& obs : frame.rows) {
    std::vector<std::string> fields = {obs.station_id,
                                       format_iso8601(obs.observed_at),
                                       cell(obs.wind_speed_kmh),
                                       cell(obs.max_temp_c),
                                       cell(obs.avg_temp_c),
                                       cell(obs.rel_humidity_pct),
                                       obs.precip ? format_double(obs.precip->mm) : "",
                                       obs.precip ? (obs.precip->trace ? "1" : "0") : "",
                                       obs.precip && obs.precip->period_code
                                           ? std::to_string(*obs.precip->period_code)
                                           : "",
                                       cell(obs.pressure_hpa)};
    out += join_csv_line(fields);
    out += '\n';
  }
  return out;
}

ClimateFrame climate_from_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kHeader) throw FormatError("climate CSV: missing or unexpected header");
  ClimateFrame frame;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 10) throw FormatError("climate CSV line " + std::to_string(i + 1) + ": expected 10 fields");
    SynopObservation obs;
    obs.station_id = f[0];
    const auto t = parse_iso8601(f[1]);
    if (!t) throw FormatError("climate CSV line " + std::to_string(i + 1) + ": bad time '" + f[1] + "'");
    obs.observed_at = *t;
    obs.wind_speed_kmh = number_cell(f[2], i + 1);
    obs.max_temp_c = number_cell(f[3], i + 1);
    obs.avg_temp_c = number_cell(f[4], i + 1);
    obs.rel_humidity_pct = number_cell(f[5], i + 1);
    if (auto mm = number_cell(f[6], i + 1)) {
      PrecipReading p{*mm, f[7] == "1", std::nullopt};
      if (!f[8].empty()) {
        int code = 0;
        const auto [ptr, ec] = std::from_chars(f[8].data(), f[8].data() + f[8].size(), code);
        if (ec != std::errc() || ptr != f[8].data() + f[8].size()) {
          throw FormatError("climate CSV line " + std::to_string(i + 1) + ": bad period '" + f[8] + "'");
        }
        p.period_code = code;
      }
      obs.precip = p;
    }
    obs.pressure_hpa = number_cell(f[9], i + 1);
    frame.stations.insert(obs.station_id);
    frame.rows.push_back(std::move(obs));
  }
  std::stable_sort(frame.rows.begin(), frame.rows.end(), [](const SynopObservation& a, const SynopObservation& b) {
    if (a.observed_at != b.observed_at) return a.observed_at < b.observed_at;
    return a.station_id < b.station_id;
  });
  return frame;
}

}  // namespace crisis_pulse::synop
