#include "twolayer/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

GaussRule build_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw ValidationError("gauss_legendre: node count must be in [1, 256]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss_rule(n));
  return *slot;
}

void legendre_p(int kmax, double t, std::span<double> out) {
  out[0] = 1.0;
  if (kmax >= 1) out[1] = t;
  for (int k = 2; k <= kmax; ++k) out[k] = ((2.0 * k - 1.0) * t * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

void spherical_bessel_j(int kmax, double z, std::span<double> out) {
  const double az = std::abs(z);
  if (az < 0.5) {
    // j_k(z) = z^k / (2k+1)!! * sum_m (-z^2/2)^m / (m! (2k+3)(2k+5)...(2k+2m+1))
    double lead = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) lead *= z / (2.0 * k + 1.0);
      double term = 1.0, sum = 1.0;
      const double q = -0.5 * z * z;
      for (int m = 1; m < 40; ++m) {
        term *= q / (m * (2.0 * k + 2.0 * m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      }
      out[k] = lead * sum;
    }
    return;
  }
  const double s = std::sin(z), c = std::cos(z);
  out[0] = s / z;
  if (kmax == 0) return;
  if (az > kmax) {
    out[1] = s / (z * z) - c / z;
    for (int k = 1; k < kmax; ++k) out[k + 1] = (2.0 * k + 1.0) / z * out[k] - out[k - 1];
    return;
  }
  // Miller: start well above kmax and recur downwards, normalise with j_0.
  const int start = kmax + 20 + static_cast<int>(std::sqrt(40.0 * (kmax + 1)));
  double jp1 = 0.0, jk = 1e-300;
  std::vector<double> tmp(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int k = start; k > 0; --k) {
    const double jm1 = (2.0 * k + 1.0) / z * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (k - 1 <= kmax) tmp[k - 1] = jk;
    if (std::abs(jk) > 1e250) {
      jk *= 1e-250;
      jp1 *= 1e-250;
      for (auto& v : tmp) v *= 1e-250;
    }
  }
  // When j_0 is near a zero, normalise through j_1 instead.
  const double j0 = out[0];
  const double j1 = s / (z * z) - c / z;
  const double scale = std::abs(j0) > std::abs(j1) ? j0 / tmp[0] : j1 / tmp[1];
  for (int k = 0; k <= kmax; ++k) out[k] = tmp[k] * scale;
  out[0] = j0;
}

LegendrePanel make_legendre_panel(double left, double right, std::span<const cplx> samples) {
  const int m = static_cast<int>(samples.size());
  const GaussRule& rule = gauss_legendre(m);
  LegendrePanel panel{left, right, std::vector<cplx>(static_cast<std::size_t>(m), cplx{})};
  std::vector<double> p(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    legendre_p(m - 1, rule.nodes[j], p);
    for (int k = 0; k < m; ++k) panel.coeffs[k] += rule.weights[j] * p[k] * samples[j];
  }
  for (int k = 0; k < m; ++k) panel.coeffs[k] *= 0.5 * (2.0 * k + 1.0);
  return panel;
}

cplx oscillatory_integral(const LegendrePanel& panel, double a) {
  const int m = static_cast<int>(panel.coeffs.size());
  const double h = panel.half();
  double jbuf[64];
  std::vector<double> heap;
  std::span<double> j(jbuf, 64);
  if (m > 64) {
    heap.resize(static_cast<std::size_t>(m));
    j = heap;
  }
  spherical_bessel_j(m - 1, a * h, j);
  // sum_k c_k i^k j_k, cycling i^k through 1, i, -1, -i
  double re = 0.0, im = 0.0;
  for (int k = 0; k < m; ++k) {
    const cplx t = panel.coeffs[k] * j[k];
    switch (k & 3) {
      case 0: re += t.real(); im += t.imag(); break;
      case 1: re -= t.imag(); im += t.real(); break;
      case 2: re -= t.real(); im -= t.imag(); break;
      default: re += t.imag(); im -= t.real(); break;
    }
  }
  return 2.0 * h * std::polar(1.0, a * panel.mid()) * cplx(re, im);
}

QuadratureNodes composite_gauss(double left, double right, std::span<const double> breakpoints,
                                const PanelPlan& plan, double max_rate) {
  QuadratureNodes q;
  if (!(right > left)) return q;
  std::vector<double> cuts{left};
  for (double b : breakpoints)
    if (b > left && b < right) cuts.push_back(b);
  cuts.push_back(right);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const GaussRule& rule = gauss_legendre(plan.nodes);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    int panels = std::max(plan.panels, 1);
    const double needed = max_rate * (b - a) / plan.max_phase;
    if (needed > panels) panels = static_cast<int>(std::ceil(needed));
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width;
      const double half = 0.5 * width;
      for (int i = 0; i < plan.nodes; ++i) {
        q.x.push_back(mid + half * rule.nodes[i]);
        q.w.push_back(half * rule.weights[i]);
      }
    }
  }
  return q;
}

}  // namespace twolayer
