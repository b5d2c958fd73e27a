#pragma once

#include <span>

namespace cantor2w {

/// Ordinary least-squares line y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double max_residual = 0.0;
};

/// Requires at least two points with distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace cantor2w
