#include "crisis_pulse/synop/groups.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crisis_pulse/error.hpp"

namespace crisis_pulse::synop {
namespace {

bool has_slash(std::string_view s) { return s.find('/') != std::string_view::npos; }

int digits_value(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

void require_group(std::string_view group, char indicator, const char* what) {
  if (!is_group(group)) throw MalformedGroup(std::string(what) + ": '" + std::string(group) + "' is not a group");
  if (indicator != 0 && group[0] != indicator) {
    throw MalformedGroup(std::string(what) + ": '" + std::string(group) + "' must start with '" + indicator + "'");
  }
}

}  // namespace

bool is_group(std::string_view token) {
  return token.size() == 5 &&
         std::all_of(token.begin(), token.end(), [](char c) { return (c >= '0' && c <= '9') || c == '/'; });
}

std::optional<WindUnit> wind_unit(char iw) {
  switch (iw) {
    case '0':
    case '1':
      return WindUnit::kMetersPerSecond;
    case '3':
    case '4':
      return WindUnit::kKnots;
    default:
      return std::nullopt;
  }
}

std::optional<WindReading> decode_wind(std::string_view nddff, std::optional<std::string_view> extra_00fff,
                                       char iw) {
  require_group(nddff, 0, "wind");
  const std::string_view dd = nddff.substr(1, 2);
  const std::string_view ff = nddff.substr(3, 2);
  if (has_slash(ff)) return std::nullopt;
  int speed = digits_value(ff);
  if (ff == "99") {
    if (!extra_00fff) throw MalformedGroup("wind: ff = 99 without a 00fff group");
    require_group(*extra_00fff, '0', "wind 00fff");
    if ((*extra_00fff)[1] != '0') throw MalformedGroup("wind: extension must be 00fff");
    const std::string_view fff = extra_00fff->substr(2, 3);
    if (has_slash(fff)) return std::nullopt;
    speed = digits_value(fff);
  }
  const auto unit = wind_unit(iw);
  if (!unit) return std::nullopt;
  WindReading out;
  out.speed_kmh = static_cast<double>(speed) * (*unit == WindUnit::kKnots ? kKnotsToKmh : kMpsToKmh);
  if (!has_slash(dd)) {
    const int d = digits_value(dd);
    if (d >= 1 && d <= 36) out.direction_deg = d * 10.0;
  }
  return out;
}

std::optional<double> decode_signed_tenths(std::string_view group) {
  require_group(group, 0, "temperature");
  const char sign = group[1];
  if (sign == '/') return std::nullopt;
  if (sign != '0' && sign != '1') {
    throw MalformedGroup("temperature: sign digit '" + std::string(1, sign) + "' not in {0, 1, /}");
  }
  const std::string_view value = group.substr(2, 3);
  if (has_slash(value)) return std::nullopt;
  const double magnitude = digits_value(value) / 10.0;
  return sign == '1' ? -magnitude : magnitude;
}

std::optional<double> decode_temperature(std::string_view group) {
  require_group(group, '1', "temperature");
  return decode_signed_tenths(group);
}

std::optional<double> decode_pressure(std::string_view group) {
  require_group(group, '3', "pressure");
  const std::string_view value = group.substr(1, 4);
  if (has_slash(value)) return std::nullopt;
  double hpa = digits_value(value) / 10.0;
  if (hpa < 500.0) hpa += 1000.0;
  return hpa;
}

double magnus_relative_humidity(double temp_c, double dewpoint_c) {
  const auto saturation = [](double x) { return std::exp(kMagnusA * x / (kMagnusB + x)); };
  return 100.0 * saturation(dewpoint_c) / saturation(temp_c);
}

std::optional<double> decode_humidity(std::optional<double> temp_c, std::string_view group) {
  require_group(group, '2', "humidity");
  const char sn = group[1];
  if (sn == '9') {
    const std::string_view value = group.substr(2, 3);
    if (has_slash(value)) return std::nullopt;
    return std::clamp(static_cast<double>(digits_value(value)), 0.0, 100.0);
  }
  const auto dewpoint = decode_signed_tenths(group);
  if (!dewpoint || !temp_c) return std::nullopt;
  return std::clamp(magnus_relative_humidity(*temp_c, *dewpoint), 0.0, 100.0);
}

std::optional<PrecipReading> decode_precip(std::string_view group) {
  require_group(group, '6', "precipitation");
  const std::string_view rrr = group.substr(1, 3);
  if (has_slash(rrr)) return std::nullopt;
  const int code = digits_value(rrr);
  PrecipReading out{0.0, false, std::nullopt};
  if (code <= 988) {
    out.mm = code;
  } else if (code == 989) {
    return std::nullopt;
  } else if (code == 990) {
    out.trace = true;
  } else {
    out.mm = (code - 990) / 10.0;
  }
  if (group[4] != '/') out.period_code = group[4] - '0';
  return out;
}

}  // namespace crisis_pulse::synop
