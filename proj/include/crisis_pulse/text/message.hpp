#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/util/time.hpp"

namespace crisis_pulse::text {

struct RawMessage {
  std::string id;
  UtcTime timestamp;
  std::string author;
  std::string text;
  bool is_retweet = false;
};

struct RejectedLine {
  size_t line_number;  // 1-based
  std::string reason;
};

struct IngestResult {
  std::vector<RawMessage> messages;  // file order
  std::vector<RejectedLine> rejected;
};

// JSON-lines ingestion. Each line carries id (string or integer),
// created_at (ISO-8601), user.screen_name, text and retweeted. Lines that fail
// to parse, carry invalid UTF-8, miss a field or repeat an id are rejected and
// reported, never repaired. Blank lines are ignored.
IngestResult parse_messages_jsonl(std::string_view contents);
IngestResult load_messages(const std::filesystem::path& path);

// Canonical JSON-lines form, readable by parse_messages_jsonl.
std::string to_jsonl(const std::vector<RawMessage>& messages);

}  // namespace crisis_pulse::text
