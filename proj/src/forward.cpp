#include "twolayer/forward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twolayer/errors.hpp"
#include "twolayer/fourier.hpp"

namespace twolayer {

namespace {

constexpr cplx I{0.0, 1.0};

QuadratureNodes source_nodes(const SourceSpec& f, const Medium& medium, double omega, double x,
                             const QuadratureSettings& settings) {
  std::vector<double> breaks = f.kinks();
  breaks.push_back(0.0);
  breaks.push_back(x);
  QuadratureSettings plan = settings;
  // polynomial pieces need no subdivision beyond the oscillation rule
  if (f.piecewise_degree() >= 0 && f.piecewise_degree() < plan.nodes) plan.panels = 1;
  return composite_gauss(f.a(), f.b(), breaks, plan, medium.c_max() * omega);
}

void validate_omega(double omega) {
  if (!(omega > 0.0)) throw ValidationError("forward: omega must be positive");
}

}  // namespace

FieldValue forward_field_with_derivative(const SourceSpec& f, const Medium& medium, double omega, double x,
                                         const QuadratureSettings& settings) {
  validate_omega(omega);
  if (settings.nodes < 1 || settings.panels < 1 || !(settings.max_phase > 0.0))
    throw ValidationError("forward: invalid quadrature settings");
  if (f.is_zero()) return {};
  const QuadratureNodes q = source_nodes(f, medium, omega, x, settings);
  cplx u{}, du{};
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const cplx fy = f.value(q.x[i]);
    if (fy == cplx{}) continue;
    const GreenValue gv = green_branch(x, q.x[i], x >= 0.0, medium, omega);
    u += q.w[i] * gv.g * fy;
    du += q.w[i] * gv.dg * fy;
  }
  return {u, du};
}

cplx forward_field(const SourceSpec& f, const Medium& medium, double omega, double x,
                   const QuadratureSettings& settings) {
  validate_omega(omega);
  if (f.is_zero()) return {};
  const QuadratureNodes q = source_nodes(f, medium, omega, x, settings);
  cplx u{};
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const cplx fy = f.value(q.x[i]);
    if (fy == cplx{}) continue;
    u += q.w[i] * green_eval(x, q.x[i], medium, omega) * fy;
  }
  return u;
}

BoundaryData boundary_sweep_serial(const SourceSpec& f, const Medium& medium, const FrequencyGrid& grid,
                                   const QuadratureSettings& settings) {
  BoundaryData data(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    data.u_minus[i] = forward_field(f, medium, grid[i], -1.0, settings);
    data.u_plus[i] = forward_field(f, medium, grid[i], 1.0, settings);
  }
  return data;
}

BoundaryData boundary_sweep(const SourceSpec& f, const Medium& medium, const FrequencyGrid& grid,
                            const QuadratureSettings& settings) {
  BoundaryData data(grid);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::string failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      data.u_minus[i] = forward_field(f, medium, grid[i], -1.0, settings);
      data.u_plus[i] = forward_field(f, medium, grid[i], 1.0, settings);
    } catch (const std::exception& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw ValidationError(failure);
  return data;
}

FdSolution fd_oracle(const SourceSpec& f, const Medium& medium, double omega, int intervals) {
  validate_omega(omega);
  if (intervals < 64) throw ValidationError("fd_oracle: need at least 64 intervals");
  if (intervals % 2 != 0) throw ValidationError("fd_oracle: interval count must be even so x = 0 is a node");
  const auto [k1, k2] = wavenumbers(medium, omega);
  const int n = intervals;
  const double h = 2.0 / n;
  const double h2 = h * h;

  // Tridiagonal rows sub/diag/sup plus the extra second-neighbour entry of the
  // one-sided boundary stencils, eliminated below.
  std::vector<cplx> sub(n + 1), diag(n + 1), sup(n + 1), rhs(n + 1);
  for (int j = 1; j < n; ++j) {
    const double x = -1.0 + h * j;
    const int mid = n / 2;
    double kk;
    if (j == mid) kk = 0.5 * (k1 * k1 + k2 * k2);
    else kk = x > 0.0 ? k1 * k1 : k2 * k2;
    sub[j] = 1.0;
    diag[j] = -2.0 + h2 * kk;
    sup[j] = 1.0;
    rhs[j] = -h2 * f.value(j == mid ? 0.0 : x);
  }
  // (-3u0 + 4u1 - u2)/(2h) + i k2 u0 = 0, scaled by h
  cplx d0 = -1.5 + I * k2 * h, s0 = 2.0, e0 = -0.5;
  // eliminate u2 with row 1
  const cplx m0 = e0 / sup[1];
  diag[0] = d0 - m0 * sub[1];
  sup[0] = s0 - m0 * diag[1];
  rhs[0] = -m0 * rhs[1];
  // (3uN - 4uN-1 + uN-2)/(2h) - i k1 uN = 0, scaled by h
  cplx dn = 1.5 - I * k1 * h, sn = -2.0, en = 0.5;
  const cplx mn = en / sub[n - 1];
  diag[n] = dn - mn * sup[n - 1];
  sub[n] = sn - mn * diag[n - 1];
  rhs[n] = -mn * rhs[n - 1];

  // Thomas elimination
  for (int j = 1; j <= n; ++j) {
    if (std::abs(diag[j - 1]) < 1e-300)
      throw NumericalError("fd_oracle: singular pivot at omega=" + std::to_string(omega) +
                           ", intervals=" + std::to_string(intervals));
    const cplx m = sub[j] / diag[j - 1];
    diag[j] -= m * sup[j - 1];
    rhs[j] -= m * rhs[j - 1];
  }
  if (std::abs(diag[n]) < 1e-300)
    throw NumericalError("fd_oracle: singular pivot at omega=" + std::to_string(omega) +
                         ", intervals=" + std::to_string(intervals));
  FdSolution sol;
  sol.h = h;
  sol.u.assign(n + 1, cplx{});
  sol.u[n] = rhs[n] / diag[n];
  for (int j = n - 1; j >= 0; --j) sol.u[j] = (rhs[j] - sup[j] * sol.u[j + 1]) / diag[j];
  return sol;
}

double TraceReport::max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }

TraceReport interface_traces(const SourceSpec& f, const Medium& medium, double omega,
                             const QuadratureSettings& settings) {
  validate_omega(omega);
  const auto [k1, k2] = wavenumbers(medium, omega);
  TraceReport r{};
  const FieldValue at0 = forward_field_with_derivative(f, medium, omega, 0.0, settings);
  r.u0 = at0.u;
  r.du0 = at0.du;
  r.z = {r.du0 - I * k1 * r.u0, r.du0 + I * k2 * r.u0, r.du0 + I * k1 * r.u0, r.du0 - I * k2 * r.u0};

  const HalflineTransformer ft(split_source(f));
  const cplx F1 = ft(Side::right, -k1);  // int e^{i k1 y} f1
  const cplx F2 = ft(Side::left, k2);    // int e^{-i k2 y} f2
  const double sum = k1 + k2;
  r.u0_pred = I / sum * (F1 + F2);
  r.du0_pred = (k2 * F1 - k1 * F2) / sum;
  r.z_pred = {F1, -F2, ((k2 - k1) * F1 - 2.0 * k1 * F2) / sum, (2.0 * k2 * F1 + (k2 - k1) * F2) / sum};

  r.residuals[0] = std::abs(r.u0 - r.u0_pred);
  r.residuals[1] = std::abs(r.du0 - r.du0_pred);
  for (int i = 0; i < 4; ++i) r.residuals[2 + i] = std::abs(r.z[i] - r.z_pred[i]);
  return r;
}

RadiationResiduals check_radiation(const SourceSpec& f, const Medium& medium, double omega,
                                   const QuadratureSettings& settings) {
  validate_omega(omega);
  const auto [k1, k2] = wavenumbers(medium, omega);
  const FieldValue left = forward_field_with_derivative(f, medium, omega, -1.0, settings);
  const FieldValue right = forward_field_with_derivative(f, medium, omega, 1.0, settings);
  return {std::abs(left.du + I * k2 * left.u), std::abs(right.du - I * k1 * right.u)};
}

}  // namespace twolayer
