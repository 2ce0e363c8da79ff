#include "twolayer/source.hpp"

#include <algorithm>
#include <cmath>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

double bump_profile(double x, double a, double b) {
  if (x <= a || x >= b) return 0.0;
  const double t = (2.0 * x - a - b) / (b - a);
  const double q = 1.0 - t * t;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

// Cardinal B-spline of the given order on [0, order] (Cox-de Boor).
double cardinal_bspline(int order, double t) {
  if (t < 0.0 || t >= order) return 0.0;
  std::vector<double> n(static_cast<std::size_t>(order), 0.0);
  n[static_cast<std::size_t>(std::floor(t))] = 1.0;
  for (int k = 2; k <= order; ++k) {
    for (int i = 0; i + k <= order; ++i) {
      n[i] = ((t - i) * n[i] + (i + k - t) * n[i + 1]) / (k - 1);
    }
  }
  return n[0];
}

}  // namespace

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::bump: return "bump";
    case SourceKind::bspline: return "bspline";
    case SourceKind::modulated_bump: return "modulated_bump";
    case SourceKind::grid: return "grid";
  }
  return "unknown";
}

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "bump") return SourceKind::bump;
  if (name == "bspline") return SourceKind::bspline;
  if (name == "modulated_bump" || name == "modbump") return SourceKind::modulated_bump;
  if (name == "grid") return SourceKind::grid;
  throw ValidationError("source.kind: unknown source kind '" + name + "'");
}

void SourceSpec::validate_support() const {
  if (!(a_ > -1.0 && b_ < 1.0 && a_ < b_))
    throw ValidationError("source: support [a, b] must satisfy -1 < a < b < 1");
}

SourceSpec SourceSpec::bump(double a, double b, cplx amplitude) {
  SourceSpec s;
  s.kind_ = SourceKind::bump;
  s.a_ = a;
  s.b_ = b;
  s.amplitude_ = amplitude;
  s.validate_support();
  return s;
}

SourceSpec SourceSpec::bspline(double a, double b, int order, cplx amplitude) {
  if (order < 1 || order > 12) throw ValidationError("source: bspline order must be in [1, 12]");
  SourceSpec s;
  s.kind_ = SourceKind::bspline;
  s.a_ = a;
  s.b_ = b;
  s.order_ = order;
  s.amplitude_ = amplitude;
  s.validate_support();
  s.bspline_peak_ = cardinal_bspline(order, 0.5 * order);
  return s;
}

SourceSpec SourceSpec::modulated_bump(double a, double b, double mod_freq, cplx amplitude) {
  SourceSpec s = bump(a, b, amplitude);
  s.kind_ = SourceKind::modulated_bump;
  s.mod_freq_ = mod_freq;
  return s;
}

SourceSpec SourceSpec::grid(std::vector<double> x, std::vector<cplx> samples) {
  if (x.size() < 2 || x.size() != samples.size())
    throw ValidationError("source: grid needs at least two nodes and one sample per node");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw ValidationError("source: grid nodes must be strictly increasing");
  SourceSpec s;
  s.kind_ = SourceKind::grid;
  s.a_ = x.front();
  s.b_ = x.back();
  s.grid_x_ = std::move(x);
  s.grid_samples_ = std::move(samples);
  s.validate_support();
  return s;
}

cplx SourceSpec::operator()(double x) const {
  if (!(x > -1.0 && x < 1.0)) throw ValidationError("eval_source: x must lie in (-1, 1)");
  return value(x);
}

cplx SourceSpec::value(double x) const {
  if (x < a_ || x > b_) return {};
  switch (kind_) {
    case SourceKind::bump:
      return amplitude_ * bump_profile(x, a_, b_);
    case SourceKind::modulated_bump:
      return amplitude_ * bump_profile(x, a_, b_) * std::polar(1.0, mod_freq_ * x);
    case SourceKind::bspline: {
      const double t = order_ * (x - a_) / (b_ - a_);
      return amplitude_ * (cardinal_bspline(order_, t) / bspline_peak_);
    }
    case SourceKind::grid: {
      auto it = std::upper_bound(grid_x_.begin(), grid_x_.end(), x);
      if (it == grid_x_.end()) return grid_samples_.back();
      const auto i = static_cast<std::size_t>(it - grid_x_.begin());
      if (i == 0) return grid_samples_.front();
      const double w = (x - grid_x_[i - 1]) / (grid_x_[i] - grid_x_[i - 1]);
      return (1.0 - w) * grid_samples_[i - 1] + w * grid_samples_[i];
    }
  }
  return {};
}

std::vector<double> SourceSpec::kinks() const {
  std::vector<double> k;
  if (kind_ == SourceKind::bspline) {
    for (int i = 1; i < order_; ++i) k.push_back(a_ + (b_ - a_) * i / order_);
  } else if (kind_ == SourceKind::grid) {
    k.assign(grid_x_.begin() + 1, grid_x_.end() - 1);
  }
  return k;
}

int SourceSpec::piecewise_degree() const {
  if (kind_ == SourceKind::bspline) return order_ - 1;
  if (kind_ == SourceKind::grid) return 1;
  return -1;
}

bool SourceSpec::is_zero() const {
  if (kind_ == SourceKind::grid)
    return std::all_of(grid_samples_.begin(), grid_samples_.end(), [](cplx v) { return v == cplx{}; });
  return amplitude_ == cplx{};
}

SourceSpec SourceSpec::scaled(cplx s) const {
  SourceSpec out = *this;
  out.amplitude_ *= s;
  for (auto& v : out.grid_samples_) v *= s;
  return out;
}

std::pair<double, double> SourcePair::side_support(Side s) const {
  if (s == Side::right) return {std::max(f_.a(), 0.0), std::max(f_.b(), 0.0)};
  return {std::min(f_.a(), 0.0), std::min(f_.b(), 0.0)};
}

SourcePair split_source(const SourceSpec& f) { return SourcePair(f); }

GridSamples sample_uniform(const SourceSpec& f, double left, double right, int nodes) {
  if (nodes < 2 || !(right > left)) throw ValidationError("sample_uniform: need two or more nodes on a proper interval");
  GridSamples g;
  g.x0 = left;
  g.h = (right - left) / (nodes - 1);
  g.values.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) g.values[i] = f.value(i + 1 == nodes ? right : left + g.h * i);
  return g;
}

double l2_norm(const GridSamples& g) {
  const std::size_t n = g.values.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * std::norm(g.values[i]);
  }
  return std::sqrt(sum * g.h);
}

double sobolev_norm(const GridSamples& g, int n) {
  if (n < 0) throw ValidationError("sobolev_norm: order must be non-negative");
  if (g.values.size() < static_cast<std::size_t>(2 * n + 2))
    throw ValidationError("sobolev_norm: grid too coarse for order " + std::to_string(n));
  double total = 0.0;
  std::vector<cplx> d = g.values;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = (d[i + 1] - d[i]) / g.h;
      d.pop_back();
    }
    const double part = l2_norm(GridSamples{g.x0 + 0.5 * k * g.h, g.h, d});
    total += part * part;
  }
  return std::sqrt(total);
}

double sobolev_norm(const SourceSpec& f, int n, int nodes) {
  return sobolev_norm(sample_uniform(f, -1.0, 1.0, nodes), n);
}

bool class_membership(const SourceSpec& f, int n, double bound, int nodes) {
  if (!(bound > 0.0)) throw ValidationError("class_membership: M must be positive");
  if (!(f.a() > -1.0 && f.b() < 1.0)) return false;
  return sobolev_norm(f, n, nodes) <= bound;
}

std::vector<LegendrePanel> source_panels(const SourceSpec& f, int panels_per_piece, int nodes) {
  std::vector<LegendrePanel> out;
  if (f.is_zero()) return out;
  std::vector<double> cuts{f.a()};
  if (f.a() < 0.0 && f.b() > 0.0) cuts.push_back(0.0);
  for (double k : f.kinks()) cuts.push_back(k);
  cuts.push_back(f.b());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int degree = f.piecewise_degree();
  const int m = degree >= 0 ? degree + 1 : nodes;
  const int per_piece = degree >= 0 ? 1 : panels_per_piece;
  const GaussRule& rule = gauss_legendre(m);
  std::vector<cplx> samples(static_cast<std::size_t>(m));
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double width = (cuts[s + 1] - cuts[s]) / per_piece;
    for (int p = 0; p < per_piece; ++p) {
      const double left = cuts[s] + p * width;
      const double right = p + 1 == per_piece ? cuts[s + 1] : left + width;
      const double mid = 0.5 * (left + right), half = 0.5 * (right - left);
      for (int j = 0; j < m; ++j) samples[j] = f.value(mid + half * rule.nodes[j]);
      out.push_back(make_legendre_panel(left, right, samples));
    }
  }
  return out;
}

}  // namespace twolayer
