#include "crisis_pulse/text/message.hpp"

#include <json.hpp>
#include <unordered_set>

#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::text {

using nlohmann::json;

IngestResult parse_messages_jsonl(std::string_view contents) {
  IngestResult result;
  std::unordered_set<std::string> seen;
  const auto lines = split_lines(contents);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_number = i + 1;
    if (trim(lines[i]).empty()) continue;
    json doc;
    try {
      doc = json::parse(lines[i]);
    } catch (const json::exception& e) {
      result.rejected.push_back({line_number, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    try {
      RawMessage msg;
      const json& id = doc.at("id");
      if (id.is_string()) {
        msg.id = id.get<std::string>();
      } else if (id.is_number_integer()) {
        msg.id = id.dump();
      } else {
        throw std::invalid_argument("id must be a string or integer");
      }
      if (msg.id.empty()) throw std::invalid_argument("empty id");
      const auto created = doc.at("created_at").get<std::string>();
      const auto ts = parse_iso8601(created);
      if (!ts) throw std::invalid_argument("unparseable created_at '" + created + "'");
      msg.timestamp = *ts;
      msg.author = doc.at("user").at("screen_name").get<std::string>();
      msg.text = doc.at("text").get<std::string>();
      if (doc.contains("retweeted")) msg.is_retweet = doc.at("retweeted").get<bool>();
      if (!seen.insert(msg.id).second) throw std::invalid_argument("duplicate id " + msg.id);
      result.messages.push_back(std::move(msg));
    } catch (const std::exception& e) {
      result.rejected.push_back({line_number, e.what()});
    }
  }
  return result;
}

IngestResult load_messages(const std::filesystem::path& path) {
  return parse_messages_jsonl(read_file(path));
}

std::string to_jsonl(const std::vector<RawMessage>& messages) {
  std::string out;
  for (const auto& m : messages) {
    nlohmann::ordered_json doc;
    doc["id"] = m.id;
    doc["created_at"] = format_iso8601(m.timestamp);
    doc["user"] = {{"screen_name", m.author}};
    doc["text"] = m.text;
    doc["retweeted"] = m.is_retweet;
    out += doc.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace crisis_pulse::text
