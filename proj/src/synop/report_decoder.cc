#include <array>
#include <functional>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/synop/report.hpp"

namespace crisis_pulse::synop {
namespace {

// iR: where precipitation groups may appear.
bool precip_in_section1(char ir) { return ir == '0' || ir == '1' || ir == '/'; }
bool precip_in_section3(char ir) { return ir == '0' || ir == '2' || ir == '/'; }

template <typename F>
auto guarded(DecodeDiagnostics& diag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const MalformedGroup&) {
    ++diag.malformed_groups;
    return std::nullopt;
  }
}

std::optional<double> within(std::optional<double> v, double lo, double hi, DecodeDiagnostics& diag) {
  if (v && (*v < lo || *v > hi)) {
    ++diag.sanity_rejections;
    return std::nullopt;
  }
  return v;
}

}  // namespace

SynopObservation decode_report(const SynopReport& report) {
  SynopObservation obs;
  obs.station_id = report.station_id;
  obs.observed_at = report.observed_at;
  auto& diag = obs.diagnostics;

  const auto& s1 = report.section1;
  const char ir = s1.empty() ? '/' : s1[0][0];

  // Fixed-position groups: iRiXhVV, Nddff and, when ff = 99, 00fff.
  std::size_t pos = s1.empty() ? 0 : 1;
  if (s1.size() > 1) {
    const std::string& nddff = s1[1];
    std::optional<std::string_view> extra;
    pos = 2;
    if (nddff.substr(3, 2) == "99" && s1.size() > 2 && s1[2].substr(0, 2) == "00") {
      extra = s1[2];
      pos = 3;
    }
    const auto wind = guarded(diag, [&]() { return decode_wind(nddff, extra, report.iw); });
    if (wind) {
      obs.wind_speed_kmh = wind->speed_kmh;
      diag.wind_direction_deg = wind->direction_deg;
    }
  }

  // Numbered groups of section 1 appear at most once, in ascending order;
  // the first occurrence wins if a station repeats one.
  std::array<bool, 10> seen{};
  std::optional<std::string> humidity_group;
  for (; pos < s1.size(); ++pos) {
    const std::string& g = s1[pos];
    const int id = g[0] - '0';
    if (id < 0 || id > 9 || seen[id]) continue;
    seen[id] = true;
    switch (id) {
      case 1:
        obs.avg_temp_c = guarded(diag, [&]() { return decode_temperature(g); });
        break;
      case 2:
        humidity_group = g;
        break;
      case 3:
        obs.pressure_hpa = guarded(diag, [&]() { return decode_pressure(g); });
        break;
      case 4:
        diag.sea_level_pressure_hpa = guarded(diag, [&]() {
          const std::string as_station = "3" + g.substr(1);
          return decode_pressure(as_station);
        });
        break;
      case 6:
        if (precip_in_section1(ir)) obs.precip = guarded(diag, [&]() { return decode_precip(g); });
        break;
      default:
        break;
    }
  }

  obs.avg_temp_c = within(obs.avg_temp_c, kMinTempC, kMaxTempC, diag);
  if (humidity_group) {
    if ((*humidity_group)[1] != '9') {
      diag.dewpoint_c = within(guarded(diag, [&]() { return decode_signed_tenths(*humidity_group); }),
                               kMinTempC, kMaxTempC, diag);
      if (diag.dewpoint_c && obs.avg_temp_c) {
        obs.rel_humidity_pct = decode_humidity(obs.avg_temp_c, *humidity_group);
      }
    } else {
      obs.rel_humidity_pct = guarded(diag, [&]() { return decode_humidity(obs.avg_temp_c, *humidity_group); });
    }
  }
  obs.pressure_hpa = within(obs.pressure_hpa, kMinPressureHpa, kMaxPressureHpa, diag);
  diag.sea_level_pressure_hpa = within(diag.sea_level_pressure_hpa, kMinPressureHpa, kMaxPressureHpa, diag);

  // Section 3: 1sTxTxTx, radiation after 55xxx, then 6RRRtR.
  bool seen_max = false;
  bool seen_precip3 = false;
  // 55SSS (or 553SS) is followed by radiation groups 0FFFF..5FFFF with
  // strictly increasing leading digit; they are skipped.
  bool in_radiation = false;
  int radiation_last = -1;
  for (const std::string& g : report.section3) {
    if (in_radiation) {
      const int j = g[0] - '0';
      if (j > radiation_last && j <= 5) {
        radiation_last = j;
        continue;
      }
      in_radiation = false;
    }
    if (g.compare(0, 2, "55") == 0) {
      in_radiation = true;
      radiation_last = -1;
      continue;
    }
    if (g[0] == '1' && !seen_max) {
      seen_max = true;
      obs.max_temp_c = within(guarded(diag, [&]() { return decode_temperature(g); }), kMinTempC, kMaxTempC, diag);
    } else if (g[0] == '6' && !seen_precip3) {
      seen_precip3 = true;
      if (!(seen[6] && precip_in_section1(ir)) && precip_in_section3(ir)) {
        obs.precip = guarded(diag, [&]() { return decode_precip(g); });
      }
    }
  }

  return obs;
}

}  // namespace crisis_pulse::synop
