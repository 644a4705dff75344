#include <algorithm>
#include <cctype>
#include <charconv>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/synop/report.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::synop {
namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

struct Header {
  int day = 0;
  int hour = 0;
  char iw = '/';
  std::string yyggi;
};

std::optional<Header> parse_header(std::string_view yyggi) {
  if (yyggi.size() != 5 || !all_digits(yyggi.substr(0, 4))) return std::nullopt;
  Header h;
  h.day = to_int(yyggi.substr(0, 2));
  if (h.day > 50) h.day -= 50;  // legacy knot flag, superseded by iw
  h.hour = to_int(yyggi.substr(2, 2));
  h.iw = yyggi[4];
  h.yyggi = std::string(yyggi);
  if (h.day < 1 || h.day > 31 || h.hour > 23) return std::nullopt;
  return h;
}

// Builds a report from the tokens following the station id.
std::optional<SynopReport> assemble(const Header& header, std::string_view station,
                                    const std::vector<std::string_view>& groups, std::optional<UtcTime> when,
                                    const BulletinOptions& options) {
  if (station.size() != 5 || !all_digits(station)) return std::nullopt;
  if (!groups.empty() && groups.front() == "NIL") return std::nullopt;
  SynopReport report;
  report.station_id = std::string(station);
  report.iw = header.iw;
  report.yyggi = header.yyggi;
  if (when) {
    report.observed_at = *when;
  } else {
    const auto t = make_utc(options.ref_year, options.ref_month, header.day, header.hour, 0);
    if (!t) return std::nullopt;
    report.observed_at = *t;
  }
  // iRiXhVV, Nddff and a 00fff extension sit at fixed positions; a wind group
  // such as 22207 must not be taken for the 222DsVs section marker.
  std::size_t fixed = std::min<std::size_t>(groups.size(), 2);
  if (fixed == 2 && groups[1].size() == 5 && groups[1].substr(3) == "99" && groups.size() > 2 &&
      groups[2].substr(0, 2) == "00") {
    fixed = 3;
  }
  int section = 1;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string_view g = groups[i];
    if (i < fixed) {
      if (!is_group(g)) return std::nullopt;
      report.section1.emplace_back(g);
      continue;
    }
    if (g == "333") {
      section = 3;
      continue;
    }
    if (g == "444" || g == "555" || (g.size() == 5 && g.substr(0, 3) == "222")) {
      // Sections 2, 4 and 5 are not decoded; section 3 may still follow 222.
      section = (g == "444" || g == "555") ? 5 : 2;
      continue;
    }
    if (section == 5 || section == 2) continue;
    if (!is_group(g)) return std::nullopt;
    (section == 1 ? report.section1 : report.section3).emplace_back(g);
  }
  return report;
}

std::optional<SynopReport> parse_tokens(const std::vector<std::string_view>& tokens, std::optional<Header>& current,
                                        std::optional<UtcTime> when, const BulletinOptions& options) {
  auto it = std::find(tokens.begin(), tokens.end(), std::string_view("AAXX"));
  if (it != tokens.end()) {
    if (std::distance(it, tokens.end()) < 3) {
      current.reset();
      return std::nullopt;
    }
    current = parse_header(*(it + 1));
    if (!current) return std::nullopt;
    std::vector<std::string_view> groups(it + 3, tokens.end());
    return assemble(*current, *(it + 2), groups, when, options);
  }
  if (!current || tokens.empty()) return std::nullopt;
  std::vector<std::string_view> groups(tokens.begin() + 1, tokens.end());
  return assemble(*current, tokens.front(), groups, when, options);
}

// "IIiii,YYYY,MM,DD,HH,mm,<report>"
struct ExportLine {
  UtcTime when;
  std::string_view report;
};

std::optional<ExportLine> parse_export_line(std::string_view line) {
  std::size_t pos = 0;
  int fields[6] = {};
  static constexpr std::size_t kWidths[6] = {5, 4, 2, 2, 2, 2};
  for (int f = 0; f < 6; ++f) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) return std::nullopt;
    const std::string_view cell = line.substr(pos, comma - pos);
    if (cell.size() != kWidths[f] || !all_digits(cell)) return std::nullopt;
    fields[f] = to_int(cell);
    pos = comma + 1;
  }
  const auto when = make_utc(fields[1], fields[2], fields[3], fields[4], fields[5]);
  if (!when) return std::nullopt;
  return ExportLine{*when, line.substr(pos)};
}

}  // namespace

std::optional<SynopReport> parse_message(std::string_view body, const BulletinOptions& options) {
  std::optional<Header> current;
  return parse_tokens(split_ws(body), current, std::nullopt, options);
}

BulletinParse parse_bulletin(std::string_view text, const BulletinOptions& options) {
  BulletinParse out;
  std::optional<Header> current;
  std::string pending;  // raw FM-12 text awaiting a terminator

  const auto flush_raw = [&](bool final_chunk) {
    std::size_t start = 0;
    for (std::size_t eq = pending.find('='); eq != std::string::npos; eq = pending.find('=', start)) {
      const auto tokens = split_ws(std::string_view(pending).substr(start, eq - start));
      start = eq + 1;
      if (tokens.empty()) continue;
      if (auto r = parse_tokens(tokens, current, std::nullopt, options)) {
        out.reports.push_back(std::move(*r));
      } else {
        ++out.malformed;
      }
    }
    pending.erase(0, start);
    if (final_chunk) {
      // An unterminated trailer only counts when it looks like a message.
      const auto tokens = split_ws(pending);
      if (std::find(tokens.begin(), tokens.end(), std::string_view("AAXX")) != tokens.end()) ++out.malformed;
      pending.clear();
    }
  };

  for (std::string_view line : split_lines(text)) {
    if (auto exp = parse_export_line(line)) {
      flush_raw(false);
      const std::size_t eq = exp->report.find('=');
      std::optional<Header> own;
      if (eq == std::string_view::npos) {
        ++out.malformed;
        continue;
      }
      const auto tokens = split_ws(exp->report.substr(0, eq));
      auto r = parse_tokens(tokens, own, exp->when, options);
      if (r && r->station_id == line.substr(0, 5)) {
        out.reports.push_back(std::move(*r));
      } else {
        ++out.malformed;
      }
      continue;
    }
    pending.append(line);
    pending.push_back('\n');
  }
  flush_raw(true);

  if (out.reports.empty()) throw NoReportsFound("no decodable SYNOP message in input");
  return out;
}

}  // namespace crisis_pulse::synop
