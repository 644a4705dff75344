#pragma once

#include <string>
#include <string_view>

#include "crisis_pulse/align/align.hpp"

namespace crisis_pulse::align {

// iso_time then one column per series in declaration order. Values use the
// shortest round-trip form, so parsing the output reproduces the frame.
// Throws EmptyFrame when there are no timestamps.
std::string emit_plot_data(const AlignedFrame& frame);
AlignedFrame parse_plot_data(std::string_view csv);

// {"timestamps": [...], "series": [{"name", "values"}...], "dropped", "candidates"}
std::string emit_plot_json(const AlignedFrame& frame);
AlignedFrame parse_plot_json(std::string_view json);

}  // namespace crisis_pulse::align
