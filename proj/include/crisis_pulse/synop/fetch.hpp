#pragma once

#include <chrono>
#include <string>

#include "crisis_pulse/util/time.hpp"

namespace crisis_pulse::synop {

inline constexpr const char* kOgimetGetsynopUrl = "http://www.ogimet.com/cgi-bin/getsynop";

struct FetchRequest {
  std::string endpoint = kOgimetGetsynopUrl;
  std::string block;  // WMO block ("03") or full station id
  UtcTime begin{};
  UtcTime end{};
  std::chrono::milliseconds timeout{30000};
};

// "YYYYMMDDHHmm" as used by getsynop.
std::string getsynop_time(UtcTime t);

// GET endpoint?block=..&begin=..&end=.. and returns the body verbatim.
// Throws RemoteUnavailable on transport failure or a non-200 status.
std::string fetch_getsynop(const FetchRequest& request);

}  // namespace crisis_pulse::synop
