#pragma once

#include <complex>
#include <span>
#include <vector>

namespace twolayer {

using cplx = std::complex<double>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes ascending.  Cached per n, thread-safe.
const GaussRule& gauss_legendre(int n);

/// Spherical Bessel functions j_0(z) .. j_{kmax}(z) for real z, written into out
/// (size kmax + 1).  Series for small |z|, upward recurrence when |z| > kmax,
/// Miller's downward recurrence otherwise.
void spherical_bessel_j(int kmax, double z, std::span<double> out);

/// Legendre values P_0(t) .. P_{kmax}(t).
void legendre_p(int kmax, double t, std::span<double> out);

/// A function on [left, right] represented by its Legendre expansion in the
/// panel coordinate t = (y - mid) / half.
struct LegendrePanel {
  double left = 0.0;
  double right = 0.0;
  std::vector<cplx> coeffs;

  double mid() const { return 0.5 * (left + right); }
  double half() const { return 0.5 * (right - left); }
};

/// Project samples of f at the m-point Gauss nodes of [left, right] onto
/// P_0..P_{m-1}.  Exact when f is a polynomial of degree < m.
LegendrePanel make_legendre_panel(double left, double right, std::span<const cplx> samples_at_gauss_nodes);

/// Integral over the panel of p(y) * exp(i a y), with p the panel's Legendre
/// interpolant.  Uses int_{-1}^{1} P_k(t) e^{i z t} dt = 2 i^k j_k(z), so the
/// cost is independent of a.
cplx oscillatory_integral(const LegendrePanel& panel, double a);

/// Composite Gauss-Legendre over [left, right] split at the sorted breakpoints
/// lying strictly inside it, each piece cut into at least `panels` panels and
/// refined until (max_rate * panel width) <= max_phase.
struct PanelPlan {
  int panels = 8;
  int nodes = 16;
  double max_phase = 2.0;
};

struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;
};

QuadratureNodes composite_gauss(double left, double right, std::span<const double> breakpoints,
                                const PanelPlan& plan, double max_rate);

}  // namespace twolayer
