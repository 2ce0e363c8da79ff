#include "twolayer/medium.hpp"

#include <cmath>
#include <string>

#include "twolayer/errors.hpp"

namespace twolayer {

Medium::Medium(double c1, double c2) : c1_(c1), c2_(c2) {
  if (!(c1 > 0.0) || !std::isfinite(c1))
    throw ValidationError("medium: c1 must be a positive finite number, got " + std::to_string(c1));
  if (!(c2 > 0.0) || !std::isfinite(c2))
    throw ValidationError("medium: c2 must be a positive finite number, got " + std::to_string(c2));
}

Wavenumbers wavenumbers(const Medium& medium, double omega) {
  if (!(omega >= 0.0)) throw ValidationError("wavenumbers: omega must be non-negative");
  return {medium.c1() * omega, medium.c2() * omega};
}

FrequencyGrid::FrequencyGrid(std::vector<double> omegas, double band_limit)
    : omegas_(std::move(omegas)), band_limit_(band_limit) {
  if (omegas_.empty()) throw ValidationError("frequency grid: empty");
  if (!(band_limit_ > 0.0)) throw ValidationError("frequency grid: K must be positive");
  double prev = 0.0;
  for (double w : omegas_) {
    if (!(w > prev))
      throw ValidationError("frequency grid: frequencies must be positive and strictly increasing");
    if (w > band_limit_ * (1.0 + 1e-14))
      throw ValidationError("frequency grid: frequency " + std::to_string(w) + " exceeds K");
    prev = w;
  }
}

FrequencyGrid FrequencyGrid::uniform(double band_limit, int count) {
  if (count < 1) throw ValidationError("frequency grid: need at least one frequency");
  std::vector<double> w(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) w[i] = band_limit * (i + 1) / count;
  w.back() = band_limit;
  return FrequencyGrid(std::move(w), band_limit);
}

std::vector<double> FrequencyGrid::trapezoid_weights() const {
  const std::size_t n = omegas_.size();
  std::vector<double> wt(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? 0.0 : omegas_[i - 1];
    const double right = i + 1 < n ? omegas_[i + 1] : omegas_[i];
    wt[i] = 0.5 * (right - left);
  }
  return wt;
}

}  // namespace twolayer
