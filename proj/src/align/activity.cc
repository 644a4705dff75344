#include "crisis_pulse/align/activity.hpp"

#include <charconv>
#include <set>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::align {

ActivitySeries bucket_activity(const std::vector<text::RawMessage>& msgs,
                               const std::map<std::string, std::string>& labels,
                               std::chrono::seconds bucket_width) {
  if (bucket_width.count() <= 0) throw ConfigError("bucket width must be positive");
  ActivitySeries series;
  series.bucket_width = bucket_width;
  if (msgs.empty()) return series;

  std::set<std::string> label_set;
  for (const auto& m : msgs) {
    if (auto it = labels.find(m.id); it != labels.end()) label_set.insert(it->second);
  }
  series.labels.assign(label_set.begin(), label_set.end());

  UtcTime lo = bucket_floor(msgs.front().timestamp, bucket_width);
  UtcTime hi = lo;
  for (const auto& m : msgs) {
    const UtcTime b = bucket_floor(m.timestamp, bucket_width);
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  const auto n = static_cast<std::size_t>((hi - lo) / bucket_width) + 1;
  series.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    series.points[i].bucket_start = lo + bucket_width * static_cast<long long>(i);
    for (const auto& l : series.labels) series.points[i].per_label[l] = 0;
  }
  for (const auto& m : msgs) {
    auto& p = series.points[static_cast<std::size_t>((bucket_floor(m.timestamp, bucket_width) - lo) / bucket_width)];
    ++p.total;
    if (auto it = labels.find(m.id); it != labels.end()) ++p.per_label[it->second];
  }
  return series;
}

std::string activity_to_csv(const ActivitySeries& series) {
  std::string out = "# bucket_seconds=" + std::to_string(series.bucket_width.count()) + "\n";
  std::vector<std::string> header = {"bucket_start", "total"};
  header.insert(header.end(), series.labels.begin(), series.labels.end());
  out += join_csv_line(header) + "\n";
  for (const auto& p : series.points) {
    std::vector<std::string> row = {format_iso8601(p.bucket_start), std::to_string(p.total)};
    for (const auto& l : series.labels) row.push_back(std::to_string(p.per_label.at(l)));
    out += join_csv_line(row) + "\n";
  }
  return out;
}

namespace {

std::uint64_t parse_count(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("activity CSV: bad count '" + s + "'");
  }
  return v;
}

}  // namespace

ActivitySeries activity_from_csv(std::string_view text) {
  const auto lines = split_lines(text);
  constexpr std::string_view kPrefix = "# bucket_seconds=";
  if (lines.size() < 2 || lines[0].rfind(kPrefix, 0) != 0) throw FormatError("activity CSV: missing header");
  ActivitySeries series;
  series.bucket_width = std::chrono::seconds(static_cast<long long>(parse_count(lines[0].substr(kPrefix.size()))));
  if (series.bucket_width.count() <= 0) throw FormatError("activity CSV: bucket width must be positive");
  const auto header = split_csv_line(lines[1]);
  if (header.size() < 2 || header[0] != "bucket_start" || header[1] != "total") {
    throw FormatError("activity CSV: unexpected column header");
  }
  series.labels.assign(header.begin() + 2, header.end());
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != header.size()) throw FormatError("activity CSV line " + std::to_string(i + 1) + ": field count");
    ActivityPoint p;
    const auto t = parse_iso8601(f[0]);
    if (!t) throw FormatError("activity CSV line " + std::to_string(i + 1) + ": bad time");
    p.bucket_start = *t;
    p.total = parse_count(f[1]);
    for (std::size_t j = 0; j < series.labels.size(); ++j) p.per_label[series.labels[j]] = parse_count(f[j + 2]);
    series.points.push_back(std::move(p));
  }
  return series;
}

}  // namespace crisis_pulse::align
