#include "crisis_pulse/align/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::align {

double correlate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DegenerateSeries("series lengths differ (" + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw DegenerateSeries("need at least 3 points, got " + std::to_string(x.size()));
  const double n = static_cast<double>(x.size());
  const double mx = simd::sum(x) / n;
  const double my = simd::sum(y) / n;
  const double sxx = simd::centered_dot(x, mx, x, mx);
  const double syy = simd::centered_dot(y, my, y, my);
  const bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
  const bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
  if (x_const && y_const) throw DegenerateSeries("both series are constant");
  if (x_const || y_const || sxx == 0.0 || syy == 0.0) return 0.0;
  const double sxy = simd::centered_dot(x, mx, y, my);
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace crisis_pulse::align
