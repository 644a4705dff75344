#pragma once

#include <chrono>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crisis_pulse/classify/class_scores.hpp"

namespace crisis_pulse::classify {

// Wire contract:
//   POST <base>/classify  {"text": "...", "tasks": ["sentiment", ...]}
//   200 {"results": {"<task>": {"scores": {"<label>": p, ...}, "dominant": "<label>"}}}
// 4xx -> ProtocolError, 5xx / connection failure / timeout -> RemoteUnavailable.
struct RemoteEndpoint {
  std::string url;  // http://host[:port][/base]
  std::chrono::milliseconds timeout{10000};
  size_t max_in_flight = 8;
};

using RemoteResult = std::map<std::string, ClassScores>;

std::string build_request_body(std::string_view text, std::span<const std::string> tasks);

// Validates a response body against the closed label sets: every requested
// task present, exactly its labels, scores in [0, 1] summing to 1 within 1e-6,
// dominant one of the labels. Throws ProtocolError.
RemoteResult parse_response_body(std::string_view body, std::span<const std::string> tasks);

RemoteResult remote_classify(std::string_view text, std::span<const std::string> tasks,
                             const RemoteEndpoint& endpoint);

// Classifies many texts with at most endpoint.max_in_flight requests
// outstanding. Results are returned in input order. The first failure is
// rethrown after in-flight requests drain.
std::vector<RemoteResult> remote_classify_batch(std::span<const std::string> texts,
                                                std::span<const std::string> tasks,
                                                const RemoteEndpoint& endpoint);

}  // namespace crisis_pulse::classify
