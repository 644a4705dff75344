#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/synop/groups.hpp"
#include "crisis_pulse/util/time.hpp"

namespace crisis_pulse::synop {

// One land-station FM-12 message split into the sections the decoder uses.
// Section 0 is the YYGGiw group plus the station id; sections 2, 4 and 5 are
// not retained.
struct SynopReport {
  std::string station_id;  // IIiii
  UtcTime observed_at{};
  char iw = '/';
  std::string yyggi;
  std::vector<std::string> section1;
  std::vector<std::string> section3;
};

struct BulletinOptions {
  // Raw FM-12 carries only day and hour; year and month come from here.
  // OGIMET export lines carry their own date and ignore these.
  int ref_year = 1970;
  int ref_month = 1;
};

struct BulletinParse {
  std::vector<SynopReport> reports;
  std::size_t malformed = 0;
};

// Accepts raw FM-12 text, OGIMET getsynop export lines, or a mix. One report
// per '='-terminated message; a bare station message continues the most
// recent AAXX header. Throws NoReportsFound when nothing parses.
BulletinParse parse_bulletin(std::string_view text, const BulletinOptions& options = {});

// Parses a single message body (everything up to, not including, '=').
// Returns nullopt when the message is malformed or NIL.
std::optional<SynopReport> parse_message(std::string_view body, const BulletinOptions& options);

struct DecodeDiagnostics {
  std::optional<double> wind_direction_deg;
  std::optional<double> dewpoint_c;
  std::optional<double> sea_level_pressure_hpa;
  std::size_t sanity_rejections = 0;
  std::size_t malformed_groups = 0;

  friend bool operator==(const DecodeDiagnostics&, const DecodeDiagnostics&) = default;
};

struct SynopObservation {
  std::string station_id;
  UtcTime observed_at{};
  std::optional<double> wind_speed_kmh;
  std::optional<double> max_temp_c;
  std::optional<double> avg_temp_c;
  std::optional<double> rel_humidity_pct;
  std::optional<PrecipReading> precip;
  std::optional<double> pressure_hpa;
  DecodeDiagnostics diagnostics;
};

inline constexpr double kMinTempC = -80.0;
inline constexpr double kMaxTempC = 60.0;
inline constexpr double kMinPressureHpa = 850.0;
inline constexpr double kMaxPressureHpa = 1100.0;

// Never throws on content: undecodable or out-of-range groups become absent
// fields and are counted in the diagnostics.
SynopObservation decode_report(const SynopReport& report);

}  // namespace crisis_pulse::synop
