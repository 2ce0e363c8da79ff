#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "twolayer/quadrature.hpp"

namespace twolayer {

enum class SourceKind { bump, bspline, modulated_bump, grid };

std::string to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& name);

/// Compactly supported complex source on (-1, 1).
///
/// Families:
///  - bump: amp * exp(1 - 1/(1 - t^2)), t the support coordinate in (-1, 1);
///    C-infinity with peak value amp at the centre.
///  - bspline(order n): cardinal B-spline with n uniform pieces on [a, b]
///    (polynomial degree n - 1), scaled so its peak equals amp.  Its (n-1)-th
///    derivative jumps, so |f^(xi)|^2 decays like |xi|^(-2n).
///  - modulated_bump: bump * exp(i * mod_freq * x).
///  - grid: piecewise-linear interpolation of complex samples.
class SourceSpec {
 public:
  static SourceSpec bump(double a, double b, cplx amplitude = 1.0);
  static SourceSpec bspline(double a, double b, int order, cplx amplitude = 1.0);
  static SourceSpec modulated_bump(double a, double b, double mod_freq, cplx amplitude = 1.0);
  static SourceSpec grid(std::vector<double> x, std::vector<cplx> samples);

  SourceKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  int order() const { return order_; }
  double mod_freq() const { return mod_freq_; }
  cplx amplitude() const { return amplitude_; }
  const std::vector<double>& grid_x() const { return grid_x_; }
  const std::vector<cplx>& grid_samples() const { return grid_samples_; }

  /// f(x); rejects x outside (-1, 1).  Exactly zero outside [a, b].
  cplx operator()(double x) const;
  /// f(x) without the domain check (quadrature nodes may sit on +-1).
  cplx value(double x) const;

  /// Points inside (a, b) where f loses smoothness (knots or grid nodes).
  std::vector<double> kinks() const;

  /// Degree of the polynomial pieces, or -1 when f is not piecewise polynomial.
  int piecewise_degree() const;

  bool is_zero() const;

  /// Same source with amplitude (or samples) multiplied by s.
  SourceSpec scaled(cplx s) const;

 private:
  SourceSpec() = default;
  void validate_support() const;

  SourceKind kind_ = SourceKind::bump;
  double a_ = -0.5;
  double b_ = 0.5;
  int order_ = 0;
  double mod_freq_ = 0.0;
  cplx amplitude_ = 1.0;
  double bspline_peak_ = 1.0;
  std::vector<double> grid_x_;
  std::vector<cplx> grid_samples_;
};

enum class Side { right, left };

/// f1 = f on (0, 1) and f2 = f on (-1, 0).  The point x = 0 goes to f1.
class SourcePair {
 public:
  explicit SourcePair(SourceSpec f) : f_(std::move(f)) {}

  const SourceSpec& source() const { return f_; }
  cplx f1(double x) const { return x >= 0.0 ? f_.value(x) : cplx{}; }
  cplx f2(double x) const { return x < 0.0 ? f_.value(x) : cplx{}; }
  cplx side(Side s, double x) const { return s == Side::right ? f1(x) : f2(x); }

  /// Support of the given side clipped to its half-line; empty when left >= right.
  std::pair<double, double> side_support(Side s) const;

 private:
  SourceSpec f_;
};

SourcePair split_source(const SourceSpec& f);

/// Uniformly sampled complex function on [x0, x0 + (n-1) h].
struct GridSamples {
  double x0 = -1.0;
  double h = 0.0;
  std::vector<cplx> values;

  double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
};

GridSamples sample_uniform(const SourceSpec& f, double left, double right, int nodes);

/// Trapezoid L2 norm.
double l2_norm(const GridSamples& g);

/// Discrete H^n norm: sqrt(sum_{k=0..n} ||D^k f||^2) with D^k the k-th central
/// difference (k-th forward difference placed at the stencil centre).
/// Requires at least 2n + 2 nodes.
double sobolev_norm(const GridSamples& g, int n);

/// Default sampling used for norms of analytic sources: 4001 nodes on [-1, 1].
double sobolev_norm(const SourceSpec& f, int n, int nodes = 4001);

/// Membership in {f in H^n(-1,1): ||f||_{H^n} <= M, supp f inside (-1,1)}.
bool class_membership(const SourceSpec& f, int n, double bound, int nodes = 4001);

/// Source panels for oscillatory transforms: Legendre interpolants on panels
/// between support ends, x = 0 and kinks.  Smooth kinds use `panels_per_piece`
/// panels of `nodes` points per piece; piecewise polynomial kinds use one
/// exact panel per piece.
std::vector<LegendrePanel> source_panels(const SourceSpec& f, int panels_per_piece = 32, int nodes = 16);

}  // namespace twolayer
