#pragma once

#include <array>
#include <vector>

#include "twolayer/greens.hpp"
#include "twolayer/medium.hpp"
#include "twolayer/source.hpp"

namespace twolayer {

/// Composite Gauss-Legendre settings for integrals against g(x, .).
/// Pieces between breakpoints get `panels` panels of `nodes` points, refined
/// while c_max * omega * (panel width) > max_phase.
using QuadratureSettings = PanelPlan;

/// Endpoint data u(-1, omega), u(1, omega) on a frequency grid.
struct BoundaryData {
  FrequencyGrid grid;
  std::vector<cplx> u_minus;
  std::vector<cplx> u_plus;

  explicit BoundaryData(FrequencyGrid g)
      : grid(std::move(g)), u_minus(grid.size()), u_plus(grid.size()) {}
};

struct FieldValue {
  cplx u;
  cplx du;
};

/// u(x, omega) = int_{-1}^{1} g(x, y) f(y) dy and its analytic x-derivative,
/// by composite Gauss-Legendre split at 0, x, and the kinks of f.
FieldValue forward_field_with_derivative(const SourceSpec& f, const Medium& medium, double omega, double x,
                                         const QuadratureSettings& settings = {});

cplx forward_field(const SourceSpec& f, const Medium& medium, double omega, double x,
                   const QuadratureSettings& settings = {});

/// forward_field at x = +-1 for every omega.  OpenMP over frequencies.
BoundaryData boundary_sweep(const SourceSpec& f, const Medium& medium, const FrequencyGrid& grid,
                            const QuadratureSettings& settings = {});

/// Single-threaded reference for boundary_sweep; results are bit-identical.
BoundaryData boundary_sweep_serial(const SourceSpec& f, const Medium& medium, const FrequencyGrid& grid,
                                   const QuadratureSettings& settings = {});

/// Finite-difference solution of u'' + kappa(x)^2 u = -f on [-1, 1] with the
/// outgoing impedance conditions, on `intervals` uniform cells (x = 0 is a node).
struct FdSolution {
  double h = 0.0;
  std::vector<cplx> u;  // u[j] at x = -1 + j h

  double x(std::size_t j) const { return -1.0 + h * static_cast<double>(j); }
  cplx left() const { return u.front(); }
  cplx right() const { return u.back(); }
};

FdSolution fd_oracle(const SourceSpec& f, const Medium& medium, double omega, int intervals);

/// Field, derivative and impedance combinations at the interface, measured by
/// Green quadrature and predicted from half-line Fourier data.
struct TraceReport {
  cplx u0, du0;
  std::array<cplx, 4> z;       // u'(0) - ik1 u(0), u'(0) + ik2 u(0), u'(0) + ik1 u(0), u'(0) - ik2 u(0)
  cplx u0_pred, du0_pred;
  std::array<cplx, 4> z_pred;
  std::array<double, 6> residuals;  // u0, du0, z1..z4

  double max_residual() const;
};

TraceReport interface_traces(const SourceSpec& f, const Medium& medium, double omega,
                             const QuadratureSettings& settings = {});

struct RadiationResiduals {
  double minus = 0.0;  // |u'(-1) + i k2 u(-1)|
  double plus = 0.0;   // |u'(1) - i k1 u(1)|
};

RadiationResiduals check_radiation(const SourceSpec& f, const Medium& medium, double omega,
                                   const QuadratureSettings& settings = {});

}  // namespace twolayer
