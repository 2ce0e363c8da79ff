#pragma once

#include "twolayer/medium.hpp"
#include "twolayer/quadrature.hpp"

namespace twolayer {

// Two-layer Green's function, normalised by g'' + kappa^2 g = -delta(x - y)
// with outgoing behaviour on both sides of the interface x = 0.

/// Closed-form g(x, y).  Requires omega > 0 and y != 0.  At x = 0 the x >= 0
/// branch is used (both branches agree there).
cplx green_eval(double x, double y, const Medium& medium, double omega);

/// Analytic d/dx g(x, y).  At x = y the one-sided limit from x > y is returned.
cplx green_dx(double x, double y, const Medium& medium, double omega);

/// g and dg/dx from one specific branch formula (x > 0 side when upper is
/// true), evaluated even at the branch boundary.  Used for one-sided limits.
struct GreenValue {
  cplx g;
  cplx dg;
};
GreenValue green_branch(double x, double y, bool upper, const Medium& medium, double omega);

/// Layer amplitudes for a fixed source point.  For y > 0:
///   g = A e^{i k1 x} (x > y),  B e^{i k1 x} + C e^{-i k1 x} (0 < x < y),  D e^{-i k2 x} (x < 0).
/// For y < 0:
///   g = A e^{-i k2 x} (x < y), B e^{-i k2 x} + C e^{i k2 x} (y < x < 0),  D e^{i k1 x} (x > 0).
struct GreenCoeffs {
  cplx A, B, C, D;
};

/// Solves the 4x4 continuity system (value and unit jump at x = y, value and
/// derivative continuity at x = 0) by LU with partial pivoting.
GreenCoeffs green_coeffs_via_linear_system(double y, const Medium& medium, double omega);

/// The solved amplitudes written out explicitly.
GreenCoeffs green_coeffs_closed_form(double y, const Medium& medium, double omega);

/// g evaluated from layer amplitudes.
cplx green_from_coeffs(const GreenCoeffs& c, double x, double y, const Medium& medium, double omega);

struct InterfaceResiduals {
  double cont_at_zero = 0.0;
  double dcont_at_zero = 0.0;
  double cont_at_y = 0.0;
  double jump_at_y = 0.0;  // |(dg(y+) - dg(y-)) + 1|

  double max() const;
};

InterfaceResiduals interface_residuals(double y, const Medium& medium, double omega);

}  // namespace twolayer
