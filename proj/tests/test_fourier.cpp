#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "twolayer/errors.hpp"
#include "twolayer/forward.hpp"
#include "twolayer/fourier.hpp"
#include "twolayer/regression.hpp"

using namespace twolayer;

namespace {

cplx trapezoid_ft(const SourceSpec& f, double a, double b, double xi, int n) {
  const double h = (b - a) / n;
  cplx sum{};
  for (int k = 0; k <= n; ++k) {
    const double y = a + k * h;
    const double wt = (k == 0 || k == n) ? 0.5 : 1.0;
    sum += wt * std::polar(1.0, -xi * y) * f.value(y);
  }
  return sum * h;
}

SourceSpec random_source(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-0.4, 0.4), h(0.15, 0.45), ph(0.0, 2.0 * std::numbers::pi), mf(-8.0, 8.0);
  const double cc = c(rng), hh = h(rng);
  const cplx amp = std::polar(1.0, ph(rng));
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return SourceSpec::bump(cc - hh, cc + hh, amp);
    case 1: return SourceSpec::modulated_bump(cc - hh, cc + hh, mf(rng), amp);
    default: return SourceSpec::bspline(cc - hh, cc + hh, 3, amp);
  }
}

Medium random_medium(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(0.5, 2.0);
  return Medium(c(rng), c(rng));
}

}  // namespace

TEST(HalflineFt, TrivialCases) {
  const SourcePair p = split_source(SourceSpec::bump(-0.8, -0.2));
  const HalflineTransformer ft(p);
  for (double xi : {-10.0, 0.0, 3.0}) {
    EXPECT_EQ(halfline_ft(p, Side::right, xi), cplx{});
    EXPECT_EQ(ft(Side::right, xi), cplx{});
  }
  const SourceSpec f = SourceSpec::bump(0.2, 0.8, {1.0, -1.0});
  const cplx integral = trapezoid_ft(f, 0.2, 0.8, 0.0, 1000000);
  EXPECT_NEAR(std::abs(halfline_ft(split_source(f), Side::right, 0.0) - integral), 0.0, 1e-9);
}

TEST(HalflineFt, BruteForceOracle) {
  const SourceSpec f = SourceSpec::bump(0.2, 0.8);
  const cplx oracle = trapezoid_ft(f, 0.2, 0.8, 5.0, 1000000);
  EXPECT_NEAR(std::abs(halfline_ft(split_source(f), Side::right, 5.0) - oracle), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(HalflineTransformer(split_source(f))(Side::right, 5.0) - oracle), 0.0, 1e-9);
}

TEST(HalflineFt, RoutesAgree) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const SourcePair p = split_source(random_source(rng));
    const HalflineTransformer ft(p);
    for (double xi : {-40.0, -3.0, 0.5, 12.0, 90.0})
      for (Side s : {Side::right, Side::left})
        EXPECT_NEAR(std::abs(ft(s, xi) - halfline_ft(p, s, xi, {16, 32, 1.0})), 0.0, 1e-11);
  }
}

TEST(HalflineFt, ShiftLaw) {
  const double delta = 0.17;
  const SourcePair a = split_source(SourceSpec::modulated_bump(0.1, 0.5, 4.0, {0.3, 0.8}));
  const SourceSpec shifted_src = SourceSpec::modulated_bump(0.1 + delta, 0.5 + delta, 4.0, cplx{0.3, 0.8} * std::polar(1.0, -4.0 * delta));
  const SourcePair b = split_source(shifted_src);
  const HalflineTransformer fa(a), fb(b);
  for (double xi : {-30.0, -2.0, 0.0, 7.5, 55.0})
    EXPECT_NEAR(std::abs(fb(Side::right, xi) - std::polar(1.0, -xi * delta) * fa(Side::right, xi)), 0.0, 1e-10);
}

TEST(HalflineFt, ConjugateSymmetryForRealSources) {
  const HalflineTransformer ft(split_source(SourceSpec::bspline(-0.6, 0.3, 3)));
  for (double xi : {0.5, 6.0, 33.0})
    for (Side s : {Side::right, Side::left}) EXPECT_NEAR(std::abs(ft(s, -xi) - std::conj(ft(s, xi))), 0.0, 1e-14);
}

TEST(Plancherel, ZeroAndSmoothBump) {
  EXPECT_EQ(plancherel_residual(split_source(SourceSpec::bump(-0.5, 0.5, 0.0)), 200.0, 100).residual, 0.0);
  const PlancherelReport r = plancherel_residual(split_source(SourceSpec::bump(0.1, 0.7, {1.0, 0.5})), 200.0, 8000);
  EXPECT_LE(r.residual, 1e-6);
}

TEST(Plancherel, RefinementShrinksQuadraturePart) {
  const SourcePair p = split_source(SourceSpec::bump(-0.7, -0.2));
  const double ref = plancherel_residual(p, 200.0, 64000).spectral;
  double prev = std::abs(plancherel_residual(p, 200.0, 500).spectral - ref);
  for (int n : {1000, 2000}) {
    const double part = std::abs(plancherel_residual(p, 200.0, n).spectral - ref);
    EXPECT_LE(part, 0.5 * prev) << n;
    prev = part;
  }
}

TEST(DataEnergy, ZeroAndMonotone) {
  const Medium m(1.0, 1.5);
  EXPECT_EQ(std::abs(data_energy(SourceSpec::bump(-0.5, 0.5, 0.0), m, 5.0, 8).I), 0.0);
  const SourceSpec f = SourceSpec::modulated_bump(-0.3, 0.6, 5.0);
  double prev = 0.0;
  for (double s : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const DataEnergy e = data_energy(f, m, s, 24);
    EXPECT_GE(e.I1.real(), 0.0);
    EXPECT_GE(e.I2.real(), 0.0);
    EXPECT_EQ(e.I1.imag(), 0.0);
    EXPECT_GE(e.I.real(), prev);
    prev = e.I.real();
  }
}

TEST(DataEnergy, TwoRoutesAgree) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    const Medium m = random_medium(rng);
    const SourceSpec f = random_source(rng);
    const double s = std::uniform_real_distribution<double>(2.0, 20.0)(rng);
    const int panels = static_cast<int>(std::ceil(s * m.c_max())) + 2;
    const DataEnergy a = data_energy(f, m, s, panels);
    const DataEnergy b = data_energy_forward(f, m, s, panels, {16, 32, 2.0});
    EXPECT_LE(std::abs(a.I - b.I) / std::abs(b.I), 1e-8);
  }
}

TEST(DataEnergy, AnalyticContinuation) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const Medium m = random_medium(rng);
    const SourceSpec f = random_source(rng);
    const double s = std::uniform_real_distribution<double>(1.0, 12.0)(rng);
    const int panels = static_cast<int>(std::ceil(s * m.c_max())) + 2;
    const DataEnergy real = data_energy(f, m, s, panels);
    const DataEnergy cont = data_energy_analytic(f, m, s, panels);
    EXPECT_LE(std::abs(real.I - cont.I) / std::abs(real.I), 1e-10);
    const cplx z{s, 0.3 * s};
    const DataEnergy up = data_energy_analytic(f, m, z, panels), down = data_energy_analytic(f, m, std::conj(z), panels);
    EXPECT_LE(std::abs(down.I - std::conj(up.I)) / std::abs(up.I), 1e-10);
  }
}

TEST(DataEnergy, ComplexSectorEnvelope) {
  std::mt19937_64 rng(24);
  struct Case {
    Medium m;
    SourceSpec f;
    cplx s;
    double norm2;
  };
  std::vector<Case> cases;
  std::uniform_real_distribution<double> r(0.5, 10.0), a(-0.7, 0.7);
  for (int t = 0; t < 200; ++t) {
    const Medium m = random_medium(rng);
    const SourceSpec f = random_source(rng);
    const cplx s = std::polar(r(rng), a(rng));
    cases.push_back({m, f, s, l2_norm_squared(f)});
  }
  auto fitted = [&](int refine) {
    double c = 0.0;
    for (const auto& k : cases) {
      const int panels = refine * (static_cast<int>(std::ceil(std::abs(k.s) * k.m.c_max())) + 2);
      const double bound = std::abs(k.s) * std::exp(4.0 * k.m.c_max() * std::abs(k.s.imag())) * k.norm2;
      c = std::max(c, std::abs(data_energy_analytic(k.f, k.m, k.s, panels).I) / bound);
    }
    return c;
  };
  const double c1 = fitted(1), c2 = fitted(2);
  EXPECT_TRUE(std::isfinite(c1));
  EXPECT_GT(c1, 0.0);
  EXPECT_LE(std::abs(c2 - c1) / c1, 0.05);
}

TEST(EpsilonNorm, Basics) {
  const Medium m(1.0, 1.5);
  const FrequencyGrid grid = FrequencyGrid::uniform(20.0, 100);
  EXPECT_EQ(epsilon_norm(BoundaryData(grid)), 0.0);
  const SourceSpec f = SourceSpec::bump(-0.4, 0.6, {1.0, 0.2});
  const double e = epsilon_norm(boundary_sweep(f, m, grid));
  const cplx alpha{-2.0, 1.5};
  EXPECT_NEAR(epsilon_norm(boundary_sweep(f.scaled(alpha), m, grid)), std::abs(alpha) * e, 1e-12 * e);
}

TEST(EpsilonNorm, SecondOrderInGrid) {
  // zero-mean source: omega^2 |u|^2 vanishes at omega = 0, matching the trapezoid convention there
  const Medium m(1.0, 1.5);
  std::vector<double> x;
  std::vector<cplx> v;
  for (int i = 0; i <= 240; ++i) {
    const double xi = -0.6 + 1.2 * i / 240.0, t = xi / 0.6;
    x.push_back(xi);
    v.push_back(std::abs(t) < 1.0 ? std::sin(std::numbers::pi * t) * std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0);
  }
  const SourceSpec f = SourceSpec::grid(x, v);
  auto eps = [&](int n) { return epsilon_norm(boundary_sweep(f, m, FrequencyGrid::uniform(10.0, n))); };
  const double e1 = eps(50), e2 = eps(100), e3 = eps(200);
  const double rate = std::log2(std::abs(e1 - e2) / std::abs(e2 - e3));
  EXPECT_GT(rate, 1.8);
  EXPECT_LT(rate, 2.2);
}

TEST(TailDecay, SplineSlopes) {
  const Medium m(1.0, 1.5);
  std::vector<double> s;
  for (int i = 0; i <= 12; ++i) s.push_back(20.0 * std::pow(10.0, i / 12.0));
  const TailFit t1 = tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 1), m, s, 4000.0);
  const TailFit t2 = tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 2), m, s, 4000.0);
  EXPECT_NEAR(t1.slope, -1.0, 0.15);
  EXPECT_NEAR(t2.slope, -3.0, 0.45);
  EXPECT_LT(t2.slope, t1.slope);
  const TailFit t3 = tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 3), m, s, 4000.0);
  const TailFit tb = tail_decay_fit(SourceSpec::bump(0.05, 0.95), m, s, 4000.0);
  EXPECT_LT(tb.slope, t3.slope);
  EXPECT_LT(tb.slope, -5.0);
}

TEST(TailDecay, BumpSteeperThanSeven) {
  const Medium m(1.0, 1.5);
  std::vector<double> s;
  for (int i = 0; i <= 12; ++i) s.push_back(20.0 * std::pow(10.0, i / 12.0));
  EXPECT_LT(tail_decay_fit(SourceSpec::bump(0.05, 0.95), m, s, 4000.0).slope, -7.0);
}

TEST(TailDecay, Rejections) {
  const std::vector<double> bad{20.0, 10.0, 40.0};
  EXPECT_THROW(tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 1), Medium(1.0, 1.5), bad, 100.0), ValidationError);
  const std::vector<double> s{20.0, 40.0, 80.0};
  EXPECT_THROW(tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 1), Medium(1.0, 1.5), s, 50.0), ValidationError);
  EXPECT_THROW(tail_decay_fit(SourceSpec::bspline(0.1, 0.7, 1, 0.0), Medium(1.0, 1.5), s, 200.0), NumericalError);
}

TEST(Lemma32, Zero) {
  const Lemma32Check r = lemma32_check(SourceSpec::bump(-0.5, 0.5, 0.0), Medium(1.0, 1.5), 3.0);
  EXPECT_EQ(r.lhs_minus, 0.0);
  EXPECT_EQ(r.rhs_minus, 0.0);
  EXPECT_EQ(r.lhs_plus, 0.0);
  EXPECT_EQ(r.rhs_plus, 0.0);
}

TEST(Lemma32, RandomTrialsNoViolations) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> w(0.2, 30.0);
  for (int t = 0; t < 500; ++t)
    EXPECT_TRUE(lemma32_check(random_source(rng), random_medium(rng), w(rng), {32, 16, 2.0}).holds(1e-12));
}

TEST(Lemma32, OneSidedHomogeneous) {
  const Medium m(1.2, 1.2);
  const SourceSpec f = SourceSpec::bump(0.15, 0.75, {0.4, 0.9});
  for (double w = 0.5; w < 30.0; w += 1.7) {
    const Lemma32Check r = lemma32_check(f, m, w, {32, 16, 2.0});
    const double ratio = r.lhs_plus / r.rhs_plus;
    EXPECT_GT(ratio, 0.0);
    EXPECT_LE(ratio, 1.0 + 1e-12);
  }
}

TEST(Lemma31, HomogeneousConstant) {
  // homogeneous data relation: int_0^inf omega^2 (|u(-1)|^2 + |u(1)|^2) = (2 pi / (4 c^3)) ||f||^2
  for (double c : {1.0, 1.3, 0.7}) {
    const Medium m(c, c);
    const SourceSampler sampler = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> a(-0.8, -0.4), b(0.4, 0.8);
      return SourceSpec::bump(a(rng), b(rng), {1.0, 0.5});
    };
    const double expect = 2.0 * c * c * c / std::numbers::pi;
    const Lemma31Result r = lemma31_constant(sampler, m, 200.0 / c, 8, 5);
    EXPECT_NEAR(r.constant, expect, 0.1 * expect) << c;
  }
}

TEST(Lemma31, StableUnderCapDoubling) {
  const Medium m(1.0, 1.5);
  const SourceSampler sampler = [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(0.05, 0.3), w(0.3, 0.6);
    const double l = a(rng);
    return SourceSpec::bump(l, l + w(rng));
  };
  const double a = lemma31_constant(sampler, m, 100.0, 10, 3).constant;
  const double b = lemma31_constant(sampler, m, 200.0, 10, 3).constant;
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_LT(std::abs(b - a) / a, 0.05);
}

TEST(Lemma31, SingleTrialIsDirectQuotient) {
  const Medium m(1.0, 1.5);
  const SourceSpec f = SourceSpec::bump(0.1, 0.6);
  const SourceSampler sampler = [&](std::mt19937_64&) { return f; };
  const double direct = l2_norm_squared(f) / endpoint_energy(HalflineTransformer(split_source(f)), m, 0.0, 150.0);
  EXPECT_EQ(lemma31_constant(sampler, m, 150.0, 1, 9).constant, direct);
  const SourceSampler zero = [](std::mt19937_64&) { return SourceSpec::bump(0.1, 0.6, 0.0); };
  EXPECT_THROW(lemma31_constant(zero, m, 150.0, 1, 9), NumericalError);
}

TEST(Regression, LogLogSlope) {
  std::vector<double> xs{1.0, 2.0, 4.0, 8.0, 16.0}, sq, flat, noisy;
  std::mt19937_64 rng(26);
  std::normal_distribution<double> n(0.0, 0.01);
  for (double x : xs) {
    sq.push_back(x * x);
    flat.push_back(3.0);
    noisy.push_back(std::pow(x, -3.0) * (1.0 + n(rng)));
  }
  EXPECT_NEAR(fit_loglog_slope(xs, sq), 2.0, 1e-12);
  EXPECT_NEAR(fit_loglog_slope(xs, flat), 0.0, 1e-12);
  EXPECT_NEAR(fit_loglog_slope(xs, noisy), -3.0, 0.1);
  const std::vector<double> bad{1.0, -2.0, 3.0}, three{1.0, 2.0, 3.0}, two{1.0, 2.0};
  EXPECT_THROW(fit_loglog_slope(bad, three), ValidationError);
  EXPECT_THROW(fit_loglog_slope(three, bad), ValidationError);
  EXPECT_THROW(fit_loglog_slope(two, two), ValidationError);
}
