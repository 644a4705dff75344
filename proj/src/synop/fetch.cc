#include "crisis_pulse/synop/fetch.hpp"

#include <httplib.h>

#include <cstdio>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/url.hpp"

namespace crisis_pulse::synop {

std::string getsynop_time(UtcTime t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u%02d%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()));
  return buf;
}

std::string fetch_getsynop(const FetchRequest& request) {
  const auto url = parse_http_url(request.endpoint);
  if (!url) throw RemoteUnavailable("unsupported getsynop URL '" + request.endpoint + "' (expected http://...)");
  if (request.block.empty()) throw ConfigError("getsynop: block must not be empty");
  if (request.end < request.begin) throw ConfigError("getsynop: end precedes begin");

  httplib::Client client(url->origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  client.set_connection_timeout(secs.count(), micros.count());
  client.set_read_timeout(secs.count(), micros.count());
  client.set_follow_location(true);

  httplib::Params params{{"block", request.block},
                         {"begin", getsynop_time(request.begin)},
                         {"end", getsynop_time(request.end)}};
  const std::string path = url->base_path.empty() ? "/" : url->base_path;
  auto res = client.Get(path, params, httplib::Headers{});
  if (!res) throw RemoteUnavailable("GET " + request.endpoint + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw RemoteUnavailable("GET " + request.endpoint + " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

}  // namespace crisis_pulse::synop
