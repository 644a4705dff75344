#pragma once

#include <span>

namespace crisis_pulse::align {

// Pearson correlation coefficient, clamped to [-1, 1]. When exactly one of
// the series is constant the result is 0. Throws DegenerateSeries for
// mismatched lengths, fewer than three points, or two constant series.
double correlate(std::span<const double> x, std::span<const double> y);

}  // namespace crisis_pulse::align
