#pragma once

#include <span>

namespace twolayer {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of log y against log x.  Needs >= 3 points, all positive.
LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace twolayer
