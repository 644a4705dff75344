#pragma once

#include <optional>
#include <string>

namespace crisis_pulse {

struct HttpUrl {
  std::string origin;     // http://host[:port]
  std::string base_path;  // without trailing '/', may be empty
};

// Only plain http is supported by the bundled client.
inline std::optional<HttpUrl> parse_http_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") return std::nullopt;
  const auto path_start = url.find('/', scheme_end + 3);
  HttpUrl out;
  out.origin = url.substr(0, path_start);
  if (out.origin.size() <= scheme_end + 3) return std::nullopt;
  if (path_start != std::string::npos) out.base_path = url.substr(path_start);
  while (!out.base_path.empty() && out.base_path.back() == '/') out.base_path.pop_back();
  return out;
}

}  // namespace crisis_pulse
