#include "crisis_pulse/classify/remote.hpp"

#include <httplib.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/url.hpp"

namespace crisis_pulse::classify {
namespace {

using nlohmann::json;

HttpUrl parse_url(const std::string& url) {
  auto parsed = parse_http_url(url);
  if (!parsed) throw RemoteUnavailable("unsupported endpoint URL '" + url + "' (expected http://host[:port][/path])");
  return *parsed;
}

}  // namespace

std::string build_request_body(std::string_view text, std::span<const std::string> tasks) {
  nlohmann::ordered_json body;
  body["text"] = std::string(text);
  body["tasks"] = std::vector<std::string>(tasks.begin(), tasks.end());
  return body.dump();
}

RemoteResult parse_response_body(std::string_view body, std::span<const std::string> tasks) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_object()) {
    throw ProtocolError("response lacks a 'results' object");
  }
  const json& results = doc["results"];
  RemoteResult out;
  for (const auto& task : tasks) {
    const auto& labels = labels_for(task);
    if (labels.empty()) throw ProtocolError("unknown task '" + task + "'");
    if (!results.contains(task)) throw ProtocolError("response missing task '" + task + "'");
    const json& entry = results[task];
    if (!entry.is_object() || !entry.contains("scores") || !entry["scores"].is_object() ||
        !entry.contains("dominant") || !entry["dominant"].is_string()) {
      throw ProtocolError("task '" + task + "' needs 'scores' object and 'dominant' label");
    }
    ClassScores scores;
    scores.indicator = task;
    double total = 0.0;
    for (const auto& [label, value] : entry["scores"].items()) {
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        throw ProtocolError("task '" + task + "' has unknown label '" + label + "'");
      }
      if (!value.is_number()) throw ProtocolError("score for '" + label + "' is not a number");
      const double v = value.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) throw ProtocolError("score for '" + label + "' outside [0, 1]");
      scores.scores[label] = v;
      total += v;
    }
    if (scores.scores.size() != labels.size()) throw ProtocolError("task '" + task + "' misses labels");
    if (std::abs(total - 1.0) > 1e-6) throw ProtocolError("task '" + task + "' scores do not sum to 1");
    scores.dominant = entry["dominant"].get<std::string>();
    if (!scores.scores.count(scores.dominant)) {
      throw ProtocolError("task '" + task + "' has unknown dominant label '" + scores.dominant + "'");
    }
    out.emplace(task, std::move(scores));
  }
  return out;
}

RemoteResult remote_classify(std::string_view text, std::span<const std::string> tasks,
                             const RemoteEndpoint& endpoint) {
  if (tasks.empty()) throw ProtocolError("remote_classify needs at least one task");
  const HttpUrl url = parse_url(endpoint.url);
  httplib::Client client(url.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  auto res = client.Post(url.base_path + "/classify", build_request_body(text, tasks), "application/json");
  if (!res) {
    throw RemoteUnavailable("POST " + endpoint.url + "/classify failed: " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) throw RemoteUnavailable("server returned " + std::to_string(res->status));
  if (res->status >= 400) throw ProtocolError("server rejected request with " + std::to_string(res->status));
  if (res->status != 200) throw ProtocolError("unexpected status " + std::to_string(res->status));
  return parse_response_body(res->body, tasks);
}

std::vector<RemoteResult> remote_classify_batch(std::span<const std::string> texts,
                                                std::span<const std::string> tasks,
                                                const RemoteEndpoint& endpoint) {
  std::vector<RemoteResult> results(texts.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const size_t workers = std::max<size_t>(1, std::min(endpoint.max_in_flight, texts.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load()) {
        const size_t i = next.fetch_add(1);
        if (i >= texts.size()) return;
        try {
          results[i] = remote_classify(texts[i], tasks, endpoint);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace crisis_pulse::classify
