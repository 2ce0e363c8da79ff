#include "twolayer/greens.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

constexpr cplx I{0.0, 1.0};

void check_arguments(double y, double omega) {
  if (!(omega > 0.0)) throw ValidationError("green: omega must be positive (g has a 1/kappa pole at 0)");
  if (y == 0.0) throw ValidationError("green: source point y = 0 is excluded");
}

double sgn(double v) { return v >= 0.0 ? 1.0 : -1.0; }

}  // namespace

namespace {

// Branch formula with the sign of (x - y) supplied, so both one-sided limits
// at x = y are available.
GreenValue branch_with_sign(double x, double y, bool upper, double side, const Medium& medium, double omega) {
  const auto [k1, k2] = wavenumbers(medium, omega);
  const double sum = k1 + k2;
  const double dist = side * (x - y);
  if (y > 0.0) {
    if (upper) {
      const double refl = (k1 - k2) / (2.0 * k1 * sum);
      const cplx e_sum = std::polar(1.0, k1 * (x + y));
      const cplx e_dir = std::polar(1.0, k1 * dist);
      return {I * refl * e_sum + I / (2.0 * k1) * e_dir, -k1 * refl * e_sum - 0.5 * side * e_dir};
    }
    const cplx e = std::polar(1.0, k1 * y - k2 * x);
    return {I / sum * e, k2 / sum * e};
  }
  if (!upper) {
    const double refl = (k2 - k1) / (2.0 * k2 * sum);
    const cplx e_sum = std::polar(1.0, -k2 * (x + y));
    const cplx e_dir = std::polar(1.0, k2 * dist);
    return {I * refl * e_sum + I / (2.0 * k2) * e_dir, k2 * refl * e_sum - 0.5 * side * e_dir};
  }
  const cplx e = std::polar(1.0, k1 * x - k2 * y);
  return {I / sum * e, -k1 / sum * e};
}

}  // namespace

GreenValue green_branch(double x, double y, bool upper, const Medium& medium, double omega) {
  check_arguments(y, omega);
  return branch_with_sign(x, y, upper, sgn(x - y), medium, omega);
}

cplx green_eval(double x, double y, const Medium& medium, double omega) {
  return green_branch(x, y, x >= 0.0, medium, omega).g;
}

cplx green_dx(double x, double y, const Medium& medium, double omega) {
  return green_branch(x, y, x >= 0.0, medium, omega).dg;
}

GreenCoeffs green_coeffs_via_linear_system(double y, const Medium& medium, double omega) {
  check_arguments(y, omega);
  const auto [k1, k2] = wavenumbers(medium, omega);
  if (std::abs(k1 + k2) < 1e-14) throw NumericalError("green_coeffs: singular continuity system (kappa1 + kappa2 ~ 0)");

  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
  if (y > 0.0) {
    const cplx ep = std::polar(1.0, k1 * y), em = std::polar(1.0, -k1 * y);
    // A e^{ik1y} - B e^{ik1y} - C e^{-ik1y} = 0
    m.row(0) << ep, -ep, -em, 0.0;
    // ik1 A e^{ik1y} - ik1 B e^{ik1y} + ik1 C e^{-ik1y} = -1
    m.row(1) << I * k1 * ep, -I * k1 * ep, I * k1 * em, 0.0;
    rhs(1) = -1.0;
    // B + C - D = 0
    m.row(2) << 0.0, 1.0, 1.0, -1.0;
    // ik1 B - ik1 C + ik2 D = 0
    m.row(3) << 0.0, I * k1, -I * k1, I * k2;
  } else {
    const cplx em = std::polar(1.0, -k2 * y), ep = std::polar(1.0, k2 * y);
    m.row(0) << em, -em, -ep, 0.0;
    // -ik2 A e^{-ik2y} + ik2 B e^{-ik2y} - ik2 C e^{ik2y} = 1
    m.row(1) << -I * k2 * em, I * k2 * em, -I * k2 * ep, 0.0;
    rhs(1) = 1.0;
    m.row(2) << 0.0, 1.0, 1.0, -1.0;
    // -ik2 B + ik2 C - ik1 D = 0
    m.row(3) << 0.0, -I * k2, I * k2, -I * k1;
  }
  const Eigen::Vector4cd sol = m.partialPivLu().solve(rhs);
  return {sol(0), sol(1), sol(2), sol(3)};
}

GreenCoeffs green_coeffs_closed_form(double y, const Medium& medium, double omega) {
  check_arguments(y, omega);
  const auto [k1, k2] = wavenumbers(medium, omega);
  const double sum = k1 + k2;
  if (y > 0.0) {
    const cplx ep = std::polar(1.0, k1 * y), em = std::polar(1.0, -k1 * y);
    const cplx B = I * (k1 - k2) / (2.0 * k1 * sum) * ep;
    return {B + I / (2.0 * k1) * em, B, I / (2.0 * k1) * ep, I / sum * ep};
  }
  const cplx em = std::polar(1.0, -k2 * y), ep = std::polar(1.0, k2 * y);
  const cplx B = I * (k2 - k1) / (2.0 * k2 * sum) * em;
  return {B + I / (2.0 * k2) * ep, B, I / (2.0 * k2) * em, I / sum * em};
}

cplx green_from_coeffs(const GreenCoeffs& c, double x, double y, const Medium& medium, double omega) {
  const auto [k1, k2] = wavenumbers(medium, omega);
  if (y > 0.0) {
    if (x > y) return c.A * std::polar(1.0, k1 * x);
    if (x >= 0.0) return c.B * std::polar(1.0, k1 * x) + c.C * std::polar(1.0, -k1 * x);
    return c.D * std::polar(1.0, -k2 * x);
  }
  if (x < y) return c.A * std::polar(1.0, -k2 * x);
  if (x < 0.0) return c.B * std::polar(1.0, -k2 * x) + c.C * std::polar(1.0, k2 * x);
  return c.D * std::polar(1.0, k1 * x);
}

double InterfaceResiduals::max() const {
  return std::max({cont_at_zero, dcont_at_zero, cont_at_y, jump_at_y});
}

InterfaceResiduals interface_residuals(double y, const Medium& medium, double omega) {
  check_arguments(y, omega);
  InterfaceResiduals r;
  const GreenValue zp = green_branch(0.0, y, true, medium, omega);
  const GreenValue zm = green_branch(0.0, y, false, medium, omega);
  r.cont_at_zero = std::abs(zp.g - zm.g);
  r.dcont_at_zero = std::abs(zp.dg - zm.dg);

  const bool upper = y > 0.0;
  const GreenValue yp = branch_with_sign(y, y, upper, 1.0, medium, omega);
  const GreenValue ym = branch_with_sign(y, y, upper, -1.0, medium, omega);
  r.cont_at_y = std::abs(yp.g - ym.g);
  r.jump_at_y = std::abs((yp.dg - ym.dg) + 1.0);
  return r;
}

}  // namespace twolayer
