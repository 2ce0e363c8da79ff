#pragma once

#include <vector>

namespace twolayer {

/// Piecewise-constant medium: speed factor c1 for x > 0 and c2 for x < 0.
/// The wavenumbers at angular frequency omega are kappa_j = c_j * omega.
class Medium {
 public:
  Medium(double c1, double c2);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c_max() const { return c1_ > c2_ ? c1_ : c2_; }
  bool homogeneous() const { return c1_ == c2_; }

 private:
  double c1_;
  double c2_;
};

struct Wavenumbers {
  double kappa1;
  double kappa2;
};

/// (c1*omega, c2*omega); requires omega >= 0.
Wavenumbers wavenumbers(const Medium& medium, double omega);

/// Strictly increasing list of positive angular frequencies in (0, K].
class FrequencyGrid {
 public:
  FrequencyGrid(std::vector<double> omegas, double band_limit);

  /// n equispaced frequencies K/n, 2K/n, ..., K.
  static FrequencyGrid uniform(double band_limit, int count);

  const std::vector<double>& omegas() const { return omegas_; }
  double band_limit() const { return band_limit_; }
  std::size_t size() const { return omegas_.size(); }
  double operator[](std::size_t i) const { return omegas_[i]; }

  /// Trapezoid weights for integrals over (0, K) sampled on the grid, with the
  /// integrand taken as zero at omega = 0.  Weights sum to omega_n - omega_1 / 2.
  std::vector<double> trapezoid_weights() const;

 private:
  std::vector<double> omegas_;
  double band_limit_;
};

}  // namespace twolayer
