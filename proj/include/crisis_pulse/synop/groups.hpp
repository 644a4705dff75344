#pragma once

#include <optional>
#include <string_view>

// Decoders for the individual FM-12 groups used by the climate extraction.
// A '/' in any value position means "not reported": the decoder returns
// nullopt rather than guessing. Layout violations throw MalformedGroup.
namespace crisis_pulse::synop {

inline constexpr double kKnotsToKmh = 1.852;
inline constexpr double kMpsToKmh = 3.6;

// Magnus constants for saturation vapour pressure over water.
inline constexpr double kMagnusA = 17.625;
inline constexpr double kMagnusB = 243.04;

// True for five characters drawn from [0-9/].
bool is_group(std::string_view token);

enum class WindUnit { kMetersPerSecond, kKnots };

// iw: 0, 1 -> m/s; 3, 4 -> knots; anything else unknown.
std::optional<WindUnit> wind_unit(char iw);

struct WindReading {
  double speed_kmh;
  std::optional<double> direction_deg;  // absent when calm (dd = 00) or variable (dd = 99)
};

// Nddff with ff = 99 meaning the speed follows in a 00fff group.
std::optional<WindReading> decode_wind(std::string_view nddff, std::optional<std::string_view> extra_00fff,
                                       char iw);

// 1sTTT (air) or 1sTxTxTx (maximum), tenths of a degree; sign 0 = +, 1 = -.
std::optional<double> decode_temperature(std::string_view group);

// Shared by temperature and dewpoint groups; the leading indicator digit is
// not checked.
std::optional<double> decode_signed_tenths(std::string_view group);

// 3P0P0P0P0 station pressure in tenths of hPa, thousands digit omitted.
std::optional<double> decode_pressure(std::string_view group);

// Relative humidity in percent from saturation vapour pressures.
double magnus_relative_humidity(double temp_c, double dewpoint_c);

// 2snTdTdTd: sn = 9 carries humidity directly (29UUU), otherwise a dewpoint
// that needs the air temperature. Clamped to [0, 100].
std::optional<double> decode_humidity(std::optional<double> temp_c, std::string_view group);

struct PrecipReading {
  double mm;
  bool trace;
  std::optional<int> period_code;  // tR: 1 = 6 h, 2 = 12 h, 4 = 24 h, ...

  friend bool operator==(const PrecipReading&, const PrecipReading&) = default;
};

// 6RRRtR: 000-988 whole mm, 990 trace, 991-999 tenths; 989 is not decoded.
std::optional<PrecipReading> decode_precip(std::string_view group);

}  // namespace crisis_pulse::synop
