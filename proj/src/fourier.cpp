#include "twolayer/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "twolayer/errors.hpp"
#include "twolayer/regression.hpp"

namespace twolayer {

namespace {

constexpr int kOmegaNodes = 16;

// Gauss samples of f on fine panels, for transforms at complex arguments.
struct SampledSource {
  std::vector<double> y, w;
  std::vector<cplx> fy;

  explicit SampledSource(const SourceSpec& f) {
    std::vector<double> breaks = f.kinks();
    breaks.push_back(0.0);
    PanelPlan plan{32, 16, 1e300};
    const QuadratureNodes q = composite_gauss(f.a(), f.b(), breaks, plan, 0.0);
    y = q.x;
    w = q.w;
    fy.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) fy[i] = f.value(y[i]);
  }

  cplx transform(Side side, cplx xi) const {
    cplx sum{};
    for (std::size_t i = 0; i < y.size(); ++i) {
      if ((side == Side::right) != (y[i] >= 0.0)) continue;
      sum += w[i] * std::exp(cplx(0.0, -1.0) * xi * y[i]) * fy[i];
    }
    return sum;
  }
};

// The explicit endpoint combinations, generic in how transforms are obtained.
template <class Transform, class Scalar>
ScaledEndpoints combine_endpoints(const Transform& ft, double c1, double c2, Scalar omega) {
  const cplx F1m = ft(Side::right, -c1 * omega);
  const cplx F1p = ft(Side::right, c1 * omega);
  const cplx F2p = ft(Side::left, c2 * omega);
  const cplx F2m = ft(Side::left, -c2 * omega);
  const double sum = c1 + c2;
  const cplx i{0.0, 1.0};
  const cplx minus = std::exp(i * (c2 * omega)) *
                     (F1m / sum + (c2 - c1) / (2.0 * c2 * sum) * F2p + F2m / (2.0 * c2));
  const cplx plus = std::exp(i * (c1 * omega)) *
                    ((c1 - c2) / (2.0 * c1 * sum) * F1m + F1p / (2.0 * c1) + F2p / sum);
  return {minus, plus};
}

QuadratureNodes omega_nodes(double lo, double hi, int n_panels) {
  PanelPlan plan{std::max(n_panels, 1), kOmegaNodes, 1e300};
  return composite_gauss(lo, hi, {}, plan, 0.0);
}

}  // namespace

cplx halfline_ft(const SourcePair& pair, Side side, double xi, const PanelPlan& plan) {
  const auto [lo, hi] = pair.side_support(side);
  if (!(hi > lo) || pair.source().is_zero()) return {};
  PanelPlan p = plan;
  const SourceSpec& f = pair.source();
  if (f.piecewise_degree() >= 0 && f.piecewise_degree() < p.nodes) p.panels = 1;
  const QuadratureNodes q = composite_gauss(lo, hi, f.kinks(), p, std::abs(xi));
  cplx sum{};
  for (std::size_t i = 0; i < q.x.size(); ++i) sum += q.w[i] * std::polar(1.0, -xi * q.x[i]) * f.value(q.x[i]);
  return sum;
}

HalflineTransformer::HalflineTransformer(const SourcePair& pair, int panels_per_piece, int nodes) {
  for (auto& p : source_panels(pair.source(), panels_per_piece, nodes)) {
    if (p.mid() >= 0.0) right_.push_back(std::move(p));
    else left_.push_back(std::move(p));
  }
}

cplx HalflineTransformer::operator()(Side side, double xi) const {
  const auto& panels = side == Side::right ? right_ : left_;
  cplx sum{};
  for (const auto& p : panels) sum += oscillatory_integral(p, -xi);
  return sum;
}

ScaledEndpoints scaled_endpoints(const HalflineTransformer& ft, const Medium& medium, double omega) {
  return combine_endpoints(ft, medium.c1(), medium.c2(), omega);
}

double l2_norm_squared(const SourceSpec& f) {
  if (f.is_zero()) return 0.0;
  std::vector<double> breaks = f.kinks();
  breaks.push_back(0.0);
  const int panels = f.piecewise_degree() >= 0 ? 1 : 32;
  const QuadratureNodes q = composite_gauss(f.a(), f.b(), breaks, PanelPlan{panels, 16, 1e300}, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) sum += q.w[i] * std::norm(f.value(q.x[i]));
  return sum;
}

PlancherelReport plancherel_residual(const SourcePair& pair, double xi_max, int n_xi) {
  if (!(xi_max > 0.0) || n_xi < 2) throw ValidationError("plancherel_residual: need xi_max > 0 and n_xi >= 2");
  PlancherelReport r;
  r.spatial = l2_norm_squared(pair.source());
  const HalflineTransformer ft(pair);
  const double dxi = 2.0 * xi_max / n_xi;
  double sum = 0.0;
  for (int k = 0; k <= n_xi; ++k) {
    const double xi = -xi_max + k * dxi;
    const double wt = (k == 0 || k == n_xi) ? 0.5 : 1.0;
    sum += wt * (std::norm(ft(Side::right, xi)) + std::norm(ft(Side::left, xi)));
  }
  r.spectral = sum * dxi / (2.0 * std::numbers::pi);
  r.residual = std::abs(r.spatial - r.spectral);
  return r;
}

DataEnergy data_energy(const SourceSpec& f, const Medium& medium, double s, int n_panels) {
  if (!(s > 0.0)) throw ValidationError("data_energy: s must be positive");
  const HalflineTransformer ft(split_source(f));
  const QuadratureNodes q = omega_nodes(0.0, s, n_panels);
  double i1 = 0.0, i2 = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    const ScaledEndpoints e = scaled_endpoints(ft, medium, q.x[k]);
    i1 += q.w[k] * std::norm(e.minus);
    i2 += q.w[k] * std::norm(e.plus);
  }
  return {s, i1, i2, i1 + i2};
}

DataEnergy data_energy_forward(const SourceSpec& f, const Medium& medium, double s, int n_panels,
                               const QuadratureSettings& settings) {
  if (!(s > 0.0)) throw ValidationError("data_energy: s must be positive");
  const QuadratureNodes q = omega_nodes(0.0, s, n_panels);
  std::vector<double> t1(q.x.size()), t2(q.x.size());
  const auto n = static_cast<std::ptrdiff_t>(q.x.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const double w = q.x[k];
    t1[k] = w * w * std::norm(forward_field(f, medium, w, -1.0, settings));
    t2[k] = w * w * std::norm(forward_field(f, medium, w, 1.0, settings));
  }
  double i1 = 0.0, i2 = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    i1 += q.w[k] * t1[k];
    i2 += q.w[k] * t2[k];
  }
  return {s, i1, i2, i1 + i2};
}

DataEnergy data_energy_analytic(const SourceSpec& f, const Medium& medium, cplx s, int n_panels) {
  if (!(s.real() > 0.0)) throw ValidationError("data_energy_analytic: Re(s) must be positive");
  const SampledSource sampled(f);
  auto transform = [&](Side side, cplx xi) { return sampled.transform(side, xi); };
  const QuadratureNodes q = omega_nodes(0.0, 1.0, n_panels);
  const double c1 = medium.c1(), c2 = medium.c2();
  cplx i1{}, i2{};
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    const cplx w = s * q.x[k];
    const ScaledEndpoints F = combine_endpoints(transform, c1, c2, w);
    // kernel-conjugate partner: conj(F(conj w)) flips every e^{+i..} and conjugates f
    const ScaledEndpoints Fbar = combine_endpoints(transform, c1, c2, std::conj(w));
    i1 += q.w[k] * F.minus * std::conj(Fbar.minus);
    i2 += q.w[k] * F.plus * std::conj(Fbar.plus);
  }
  i1 *= s;
  i2 *= s;
  return {s, i1, i2, i1 + i2};
}

double epsilon_norm(const BoundaryData& data) {
  const std::vector<double> wt = data.grid.trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < wt.size(); ++i) {
    const double w = data.grid[i];
    sum += wt[i] * w * w * (std::norm(data.u_minus[i]) + std::norm(data.u_plus[i]));
  }
  return std::sqrt(sum);
}

double endpoint_energy(const HalflineTransformer& ft, const Medium& medium, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  // |F|^2 has omega-bandwidth at most 4 c_max; panels of width 1/c_max keep the
  // phase per 16-point panel at 4.
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * medium.c_max())));
  const QuadratureNodes q = omega_nodes(lo, hi, panels);
  double sum = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    const ScaledEndpoints e = scaled_endpoints(ft, medium, q.x[k]);
    sum += q.w[k] * (std::norm(e.minus) + std::norm(e.plus));
  }
  return sum;
}

TailFit tail_decay_fit(const SourceSpec& f, const Medium& medium, std::span<const double> s_list, double omega_cap) {
  if (s_list.size() < 3) throw ValidationError("tail_decay_fit: need at least 3 values of s");
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    if (!(s_list[i] > 0.0) || (i > 0 && !(s_list[i] > s_list[i - 1])))
      throw ValidationError("tail_decay_fit: s values must be positive and increasing");
  }
  if (!(omega_cap > s_list.back())) throw ValidationError("tail_decay_fit: omega_cap must exceed max(s)");
  const HalflineTransformer ft(split_source(f));
  const std::size_t m = s_list.size();
  std::vector<double> segment(m, 0.0);
  const auto n = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double hi = i + 1 < n ? s_list[i + 1] : omega_cap;
    segment[i] = endpoint_energy(ft, medium, s_list[i], hi);
  }
  TailFit fit;
  fit.s.assign(s_list.begin(), s_list.end());
  fit.tail.assign(m, 0.0);
  double acc = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    acc += segment[i];
    fit.tail[i] = acc;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(fit.tail[i] > 1e-300) || !std::isfinite(fit.tail[i]))
      throw NumericalError("tail_decay_fit: tail integral underflows at s = " + std::to_string(fit.s[i]));
  }
  const LineFit line = fit_loglog(fit.s, fit.tail);
  fit.slope = line.slope;
  fit.r2 = line.r2;
  return fit;
}

bool Lemma32Check::holds(double slack) const {
  return lhs_minus <= rhs_minus * (1.0 + slack) + 1e-300 && lhs_plus <= rhs_plus * (1.0 + slack) + 1e-300;
}

Lemma32Check lemma32_check(const SourceSpec& f, const Medium& medium, double omega,
                           const QuadratureSettings& settings) {
  if (!(omega > 0.0)) throw ValidationError("lemma32_check: omega must be positive");
  const double c1 = medium.c1(), c2 = medium.c2(), sum = c1 + c2;
  const HalflineTransformer ft(split_source(f));
  const double F1m = std::abs(ft(Side::right, -c1 * omega));
  const double F1p = std::abs(ft(Side::right, c1 * omega));
  const double F2p = std::abs(ft(Side::left, c2 * omega));
  const double F2m = std::abs(ft(Side::left, -c2 * omega));
  const double bm = F1m / sum + std::abs(c2 - c1) / (2.0 * c2 * sum) * F2p + F2m / (2.0 * c2);
  const double bp = std::abs(c1 - c2) / (2.0 * c1 * sum) * F1m + F1p / (2.0 * c1) + F2p / sum;
  Lemma32Check r;
  r.lhs_minus = omega * omega * std::norm(forward_field(f, medium, omega, -1.0, settings));
  r.lhs_plus = omega * omega * std::norm(forward_field(f, medium, omega, 1.0, settings));
  r.rhs_minus = bm * bm;
  r.rhs_plus = bp * bp;
  return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Lemma31Result lemma31_constant(const SourceSampler& sampler, const Medium& medium, double omega_cap, int trials,
                               std::uint64_t seed) {
  if (trials < 1) throw ValidationError("lemma31_constant: need at least one trial");
  if (!(omega_cap > 0.0)) throw ValidationError("lemma31_constant: omega_cap must be positive");
  Lemma31Result r;
  r.ratios.assign(static_cast<std::size_t>(trials), 0.0);
  std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const SourceSpec f = sampler(rng);
    const double energy = endpoint_energy(HalflineTransformer(split_source(f)), medium, 0.0, omega_cap);
    if (!(energy > 1e-300)) {
#pragma omp critical
      failure = "lemma31_constant: data energy underflows for trial " + std::to_string(t);
      continue;
    }
    r.ratios[t] = l2_norm_squared(f) / energy;
  }
  if (!failure.empty()) throw NumericalError(failure);
  r.constant = *std::max_element(r.ratios.begin(), r.ratios.end());
  return r;
}

}  // namespace twolayer
