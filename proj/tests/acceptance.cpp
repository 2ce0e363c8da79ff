// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "twolayer/commands.hpp"
#include "twolayer/forward.hpp"
#include "twolayer/fourier.hpp"
#include "twolayer/greens.hpp"
#include "twolayer/inverse.hpp"
#include "twolayer/regression.hpp"

using namespace twolayer;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx amplitude(std::mt19937_64& rng) {
  return std::polar(uniform(rng, 0.5, 1.5), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

Medium medium_draw(std::mt19937_64& rng) { return Medium(uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)); }

double point_draw(std::mt19937_64& rng) {
  double y = 0.0;
  while (std::abs(y) < 1e-3) y = uniform(rng, -0.95, 0.95);
  return y;
}

SourceSpec source_draw(std::mt19937_64& rng) {
  const double c = uniform(rng, -0.4, 0.4), h = uniform(rng, 0.15, 0.45);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return SourceSpec::bump(c - h, c + h, amplitude(rng));
    case 1: return SourceSpec::modulated_bump(c - h, c + h, uniform(rng, -8.0, 8.0), amplitude(rng));
    default: return SourceSpec::bspline(c - h, c + h, std::uniform_int_distribution<int>(2, 4)(rng), amplitude(rng));
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome identity_suite() {
  std::mt19937_64 rng(101);
  const QuadratureSettings fine{8, 64, 2.0};
  double appendix = 0.0, recip = 0.0, radiation = 0.0, traces = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Medium m = medium_draw(rng);
    const double w = uniform(rng, 0.5, 20.0);
    appendix = std::max(appendix, interface_residuals(point_draw(rng), m, w).max());
    const SourceSpec f = source_draw(rng);
    const RadiationResiduals r = check_radiation(f, m, w, fine);
    radiation = std::max({radiation, r.minus, r.plus});
    traces = std::max(traces, interface_traces(f, m, w, fine).max_residual());
  }
  for (int t = 0; t < 1000; ++t) {
    const Medium m = medium_draw(rng);
    const double x = point_draw(rng), y = point_draw(rng), w = uniform(rng, 0.5, 20.0);
    recip = std::max(recip, std::abs(green_eval(x, y, m, w) - green_eval(y, x, m, w)));
  }
  const bool ok = appendix <= 1e-10 && recip <= 1e-10 && radiation <= 1e-10 && traces <= 1e-8;
  return {ok, fmt("interface %.2e, reciprocity %.2e, radiation %.2e, traces %.2e", appendix, recip, radiation, traces)};
}

Outcome cross_solver() {
  std::mt19937_64 rng(202);
  const QuadratureSettings fine{16, 32, 2.0};
  double worst = 0.0, lo = 1e9, hi = -1e9;
  for (int t = 0; t < 5; ++t) {
    const Medium m = medium_draw(rng);
    const SourceSpec f = SourceSpec::bump(uniform(rng, -0.8, -0.3), uniform(rng, 0.3, 0.8), amplitude(rng));
    const double w = uniform(rng, 1.0, 6.0);
    const cplx um = forward_field(f, m, w, -1.0, fine), up = forward_field(f, m, w, 1.0, fine);
    std::vector<double> hs, errs;
    for (int n : {256, 512, 1024, 2048, 4096}) {
      const FdSolution fd = fd_oracle(f, m, w, n);
      const double e = std::max(std::abs(fd.left() - um) / std::abs(um), std::abs(fd.right() - up) / std::abs(up));
      hs.push_back(fd.h);
      errs.push_back(e);
    }
    worst = std::max(worst, errs.back());
    const double order = fit_loglog_slope(hs, errs);
    lo = std::min(lo, order);
    hi = std::max(hi, order);
  }
  const bool ok = worst <= 1e-4 && lo >= 1.8 && hi <= 2.2;
  return {ok, fmt("max relative gap at 4096 %.2e, fitted order in [%.3f, %.3f]", worst, lo, hi)};
}

Outcome homogeneous_inversion() {
  const Medium m(1.0, 1.0);
  const SourceSpec f = SourceSpec::bump(-0.5, 0.5, 1.0);
  std::vector<double> x(203);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -0.9 + 1.8 * i / (x.size() - 1);
  const double norm = grid_l2_norm(x, f);
  std::vector<double> errs;
  for (double K : {15.0, 30.0, 60.0}) {
    const BoundaryData data = boundary_sweep(f, m, FrequencyGrid::uniform(K, 400));
    errs.push_back(recon_error(reconstruct_homogeneous(data, m, x), f) / norm);
  }
  const bool ok = errs[2] <= 5e-2 && errs[0] > errs[1] && errs[1] > errs[2];
  return {ok, fmt("relative error K=15 %.3e, K=30 %.3e, K=60 %.3e", errs[0], errs[1], errs[2])};
}

Outcome tail_decay() {
  const Medium m(1.0, 1.5);
  std::vector<double> s;
  for (int i = 0; i <= 12; ++i) s.push_back(20.0 * std::pow(10.0, i / 12.0));
  std::string detail;
  bool ok = true;
  for (int n : {1, 2, 3}) {
    const SourceSpec f = SourceSpec::bspline(0.1, 0.7, n, 1.0);
    const TailFit fit = tail_decay_fit(f, m, s, 4000.0);
    const double theory = -(2.0 * n - 1.0);
    ok = ok && std::abs(fit.slope - theory) <= 0.15 * std::abs(theory);
    detail += fmt("n=%d slope %.3f (theory %.0f)%s", n, fit.slope, theory, n < 3 ? ", " : "");
  }
  return {ok, detail};
}

Outcome lemma32() {
  std::mt19937_64 rng(505);
  const QuadratureSettings fine{32, 16, 2.0};
  int violations = 0;
  double worst = -1.0;
  for (int t = 0; t < 500; ++t) {
    const Lemma32Check r = lemma32_check(source_draw(rng), medium_draw(rng), uniform(rng, 0.2, 30.0), fine);
    if (!r.holds(1e-12)) ++violations;
    worst = std::max({worst, r.lhs_minus / r.rhs_minus - 1.0, r.lhs_plus / r.rhs_plus - 1.0});
  }
  return {violations == 0, fmt("%d violations in 500 trials, max lhs/rhs - 1 = %.2e", violations, worst)};
}

Outcome data_energy_suite() {
  std::mt19937_64 rng(606);
  double gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Medium m = medium_draw(rng);
    const SourceSpec f = source_draw(rng);
    const double s = uniform(rng, 2.0, 20.0);
    const int panels = static_cast<int>(std::ceil(s * m.c_max())) + 2;
    const DataEnergy a = data_energy(f, m, s, panels);
    const DataEnergy b = data_energy_forward(f, m, s, panels, {16, 32, 2.0});
    gap = std::max({gap, std::abs(a.I1 - b.I1) / std::abs(b.I1), std::abs(a.I2 - b.I2) / std::abs(b.I2)});
  }
  // real-axis envelope |I(s)| <= C s ||f||^2, C fitted on a fixed family at two quadrature levels
  std::mt19937_64 fam(607);
  std::vector<std::pair<Medium, SourceSpec>> family;
  for (int t = 0; t < 10; ++t) family.emplace_back(medium_draw(fam), source_draw(fam));
  auto fitted_c = [&](int refine) {
    double c = 0.0;
    for (const auto& [m, f] : family) {
      const double norm2 = l2_norm_squared(f);
      for (double s : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        const int panels = refine * (static_cast<int>(std::ceil(s * m.c_max())) + 2);
        c = std::max(c, std::abs(data_energy(f, m, s, panels).I) / (s * norm2));
      }
    }
    return c;
  };
  const double c1 = fitted_c(1), c2 = fitted_c(2);
  const double drift = std::abs(c2 - c1) / c1;
  const bool ok = gap <= 1e-8 && std::isfinite(c1) && drift <= 0.05;
  return {ok, fmt("two-route gap %.2e, envelope C %.4e, drift %.2e", gap, c1, drift)};
}

Outcome stability_sweep() {
  RunConfig config;
  config.c1 = 1.0;
  config.c2 = 1.5;
  const auto records = run_sweep(config);
  std::map<std::tuple<double, double, int>, std::vector<double>> cells;
  int failed = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    cells[{r.K, r.eps, r.n}].push_back(r.l2_error);
  }
  auto med = [&](double K, double eps, int n) { return median(cells.at({K, eps, n})); };

  bool a = true;
  std::string da;
  for (int n : config.sweep_n) {
    for (std::size_t i = 1; i < config.sweep_K.size(); ++i)
      a = a && med(config.sweep_K[i], 0.0, n) <= 1.05 * med(config.sweep_K[i - 1], 0.0, n);
    da += fmt("%s%.2e/%.2e/%.2e/%.2e", n > 1 ? " " : "", med(5, 0, n), med(10, 0, n), med(20, 0, n), med(40, 0, n));
  }
  bool b = true;
  for (int n : config.sweep_n) b = b && med(40, 1e-1, n) > med(40, 1e-2, n) && med(40, 1e-2, n) > med(40, 1e-3, n);
  bool c = true;
  for (double K : config.sweep_K)
    for (double eps : config.sweep_eps)
      for (std::size_t j = 1; j < config.sweep_n.size(); ++j)
        c = c && med(K, eps, config.sweep_n[j]) < med(K, eps, config.sweep_n[j - 1]);
  const bool ok = failed == 0 && a && b && c;
  return {ok, fmt("(a) %s [%s] (b) %s (c) %s, %d failed cells", a ? "ok" : "no", da.c_str(), b ? "ok" : "no",
                  c ? "ok" : "no", failed)};
}

Outcome plancherel() {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const double a = uniform(rng, 0.05, 0.3), b = a + uniform(rng, 0.3, 0.6);
    const SourceSpec f = t % 2 ? SourceSpec::bump(a, b, amplitude(rng)) : SourceSpec::bump(-b, -a, amplitude(rng));
    worst = std::max(worst, plancherel_residual(split_source(f), 200.0, 8000).residual);
  }
  const Medium m(1.0, 1.5);
  const SourceSampler sampler = [](std::mt19937_64& r) {
    const double a = uniform(r, 0.05, 0.3), b = a + uniform(r, 0.3, 0.6);
    return uniform(r, 0.0, 1.0) < 0.5 ? SourceSpec::bump(a, b, amplitude(r)) : SourceSpec::bump(-b, -a, amplitude(r));
  };
  const double c100 = lemma31_constant(sampler, m, 100.0, 20, 809).constant;
  const double c200 = lemma31_constant(sampler, m, 200.0, 20, 809).constant;
  const double drift = std::abs(c200 - c100) / c100;
  const bool ok = worst <= 1e-6 && std::isfinite(c100) && drift < 0.05;
  return {ok, fmt("Plancherel residual %.2e, constant %.4e -> %.4e (drift %.2e)", worst, c100, c200, drift)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"identity suite", 30.0, identity_suite},
      {"cross-solver oracle", 60.0, cross_solver},
      {"homogeneous exact inversion", 60.0, homogeneous_inversion},
      {"tail decay slopes", 120.0, tail_decay},
      {"endpoint bound inequalities", 60.0, lemma32},
      {"data-energy consistency", 60.0, data_energy_suite},
      {"increasing-stability sweep", 600.0, stability_sweep},
      {"Plancherel bookkeeping", 60.0, plancherel},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= criteria[i].limit_s;
    if (!pass) ++failures;
    std::printf("[%s] %zu. %s: %s (%.1f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs, criteria[i].limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
