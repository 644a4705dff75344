#include "crisis_pulse/align/plot_data.hpp"

#include <json.hpp>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::align {

std::string emit_plot_data(const AlignedFrame& frame) {
  if (frame.timestamps.empty()) throw EmptyFrame("aligned frame has no timestamps");
  std::vector<std::string> header = {"iso_time"};
  for (const auto& s : frame.series) header.push_back(s.name);
  std::string out = join_csv_line(header) + "\n";
  std::vector<std::string> row(header.size());
  for (std::size_t t = 0; t < frame.timestamps.size(); ++t) {
    row[0] = format_iso8601(frame.timestamps[t]);
    for (std::size_t s = 0; s < frame.series.size(); ++s) row[s + 1] = format_double(frame.series[s].values.at(t));
    out += join_csv_line(row) + "\n";
  }
  return out;
}

AlignedFrame parse_plot_data(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw FormatError("plot CSV: empty input");
  const auto header = split_csv_line(lines[0]);
  if (header.empty() || header[0] != "iso_time") throw FormatError("plot CSV: first column must be iso_time");
  AlignedFrame frame;
  for (std::size_t s = 1; s < header.size(); ++s) frame.series.push_back({header[s], {}});
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != header.size()) throw FormatError("plot CSV line " + std::to_string(i + 1) + ": field count");
    const auto t = parse_iso8601(f[0]);
    if (!t) throw FormatError("plot CSV line " + std::to_string(i + 1) + ": bad time '" + f[0] + "'");
    frame.timestamps.push_back(*t);
    for (std::size_t s = 1; s < f.size(); ++s) {
      const auto v = parse_double(f[s]);
      if (!v) throw FormatError("plot CSV line " + std::to_string(i + 1) + ": bad value '" + f[s] + "'");
      frame.series[s - 1].values.push_back(*v);
    }
  }
  frame.candidates = frame.timestamps.size();
  return frame;
}

std::string emit_plot_json(const AlignedFrame& frame) {
  if (frame.timestamps.empty()) throw EmptyFrame("aligned frame has no timestamps");
  nlohmann::ordered_json j;
  auto& ts = j["timestamps"] = nlohmann::ordered_json::array();
  for (const auto& t : frame.timestamps) ts.push_back(format_iso8601(t));
  auto& series = j["series"] = nlohmann::ordered_json::array();
  for (const auto& s : frame.series) series.push_back({{"name", s.name}, {"values", s.values}});
  j["dropped"] = frame.dropped;
  j["candidates"] = frame.candidates;
  return j.dump(2) + "\n";
}

AlignedFrame parse_plot_json(std::string_view text) {
  AlignedFrame frame;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& t : j.at("timestamps")) {
      const auto parsed = parse_iso8601(t.get<std::string>());
      if (!parsed) throw FormatError("plot JSON: bad timestamp");
      frame.timestamps.push_back(*parsed);
    }
    for (const auto& s : j.at("series")) {
      Series out{s.at("name").get<std::string>(), s.at("values").get<std::vector<double>>()};
      if (out.values.size() != frame.timestamps.size()) throw FormatError("plot JSON: series length mismatch");
      frame.series.push_back(std::move(out));
    }
    frame.dropped = j.value("dropped", std::size_t{0});
    frame.candidates = j.value("candidates", frame.timestamps.size() + frame.dropped);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("plot JSON: ") + e.what());
  }
  return frame;
}

}  // namespace crisis_pulse::align
