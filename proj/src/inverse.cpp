#include "twolayer/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "twolayer/errors.hpp"
#include "twolayer/fourier.hpp"

namespace twolayer {

namespace {

constexpr cplx I{0.0, 1.0};

void validate_operator_args(const FrequencyGrid&, int n_basis, double a, double b) {
  if (n_basis < 8) throw ValidationError("assemble_operator: n_basis must be at least 8");
  if (!(a > -1.0 && b < 1.0 && a < b))
    throw ValidationError("assemble_operator: basis support must satisfy -1 < a < b < 1");
}

ForwardOperator operator_shell(const Medium& medium, const FrequencyGrid& grid, int n_basis, double a, double b) {
  validate_operator_args(grid, n_basis, a, b);
  ForwardOperator op{medium, grid, a, b, (b - a) / (n_basis + 1), {}, {}, {}};
  op.nodes.resize(static_cast<std::size_t>(n_basis));
  for (int j = 0; j < n_basis; ++j) op.nodes[j] = a + op.h * (j + 1);
  const std::size_t m = grid.size();
  op.matrix.resize(static_cast<Eigen::Index>(2 * m), n_basis);
  op.row_weights.resize(2 * m);
  const std::vector<double> wt = grid.trapezoid_weights();
  for (std::size_t i = 0; i < m; ++i) {
    op.row_weights[i] = op.row_weights[m + i] = grid[i] * std::sqrt(wt[i]);
  }
  return op;
}

void fill_column(ForwardOperator& op, int j) {
  const double left = j == 0 ? op.a : op.nodes[j - 1];
  const double right = j + 1 == static_cast<int>(op.nodes.size()) ? op.b : op.nodes[j + 1];
  const SourceSpec hat = SourceSpec::grid({left, op.nodes[j], right}, {0.0, 1.0, 0.0});
  const HalflineTransformer ft(split_source(hat));
  const std::size_t m = op.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double w = op.grid[i];
    const ScaledEndpoints e = scaled_endpoints(ft, op.medium, w);
    op.matrix(static_cast<Eigen::Index>(i), j) = I * e.minus / w;
    op.matrix(static_cast<Eigen::Index>(m + i), j) = I * e.plus / w;
  }
}

ReconstructionResult gridded_result(const ForwardOperator& op, const Eigen::VectorXcd& c) {
  ReconstructionResult r;
  r.x.reserve(op.nodes.size() + 2);
  r.x.push_back(op.a);
  r.x.insert(r.x.end(), op.nodes.begin(), op.nodes.end());
  r.x.push_back(op.b);
  r.f_est.assign(r.x.size(), cplx{});
  for (Eigen::Index j = 0; j < c.size(); ++j) r.f_est[static_cast<std::size_t>(j) + 1] = c(j);
  return r;
}

void check_data_matches(const ForwardOperator& op, const BoundaryData& data) {
  if (data.grid.size() != op.grid.size())
    throw ValidationError("reconstruct: data has " + std::to_string(data.grid.size()) +
                          " frequencies, operator expects " + std::to_string(op.grid.size()));
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

Eigen::MatrixXcd ForwardOperator::weighted() const {
  Eigen::MatrixXcd w = matrix;
  for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) *= row_weights[static_cast<std::size_t>(i)];
  return w;
}

Eigen::VectorXcd ForwardOperator::apply(const Eigen::VectorXcd& coeffs) const { return matrix * coeffs; }

BoundaryData ForwardOperator::apply_as_data(const Eigen::VectorXcd& coeffs) const {
  const Eigen::VectorXcd d = apply(coeffs);
  BoundaryData out(grid);
  const std::size_t m = grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    out.u_minus[i] = d(static_cast<Eigen::Index>(i));
    out.u_plus[i] = d(static_cast<Eigen::Index>(m + i));
  }
  return out;
}

SourceSpec ForwardOperator::as_source(const Eigen::VectorXcd& coeffs) const {
  std::vector<double> x{a};
  x.insert(x.end(), nodes.begin(), nodes.end());
  x.push_back(b);
  std::vector<cplx> v(x.size(), cplx{});
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) v[static_cast<std::size_t>(j) + 1] = coeffs(j);
  return SourceSpec::grid(std::move(x), std::move(v));
}

ForwardOperator assemble_operator_serial(const Medium& medium, const FrequencyGrid& grid, int n_basis, double a,
                                         double b) {
  ForwardOperator op = operator_shell(medium, grid, n_basis, a, b);
  for (int j = 0; j < n_basis; ++j) fill_column(op, j);
  return op;
}

ForwardOperator assemble_operator(const Medium& medium, const FrequencyGrid& grid, int n_basis, double a, double b) {
  ForwardOperator op = operator_shell(medium, grid, n_basis, a, b);
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < n_basis; ++j) fill_column(op, j);
  return op;
}

Eigen::VectorXcd stack(const BoundaryData& data) {
  const std::size_t m = data.grid.size();
  Eigen::VectorXcd d(static_cast<Eigen::Index>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    d(static_cast<Eigen::Index>(i)) = data.u_minus[i];
    d(static_cast<Eigen::Index>(m + i)) = data.u_plus[i];
  }
  return d;
}

Eigen::VectorXcd weighted_stack(const ForwardOperator& op, const BoundaryData& data) {
  check_data_matches(op, data);
  Eigen::VectorXcd d = stack(data);
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) *= op.row_weights[static_cast<std::size_t>(i)];
  return d;
}

BoundaryData add_noise(const BoundaryData& data, double eps_target, std::uint64_t seed) {
  if (!(eps_target >= 0.0)) throw ValidationError("add_noise: eps must be non-negative");
  if (eps_target == 0.0) return data;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BoundaryData noise(data.grid);
  const double r = std::sqrt(0.5);
  for (std::size_t i = 0; i < data.grid.size(); ++i) {
    const double a = normal(rng), b = normal(rng), c = normal(rng), d = normal(rng);
    noise.u_minus[i] = cplx(a, b) * r;
    noise.u_plus[i] = cplx(c, d) * r;
  }
  const double scale = eps_target / epsilon_norm(noise);
  BoundaryData out = data;
  for (std::size_t i = 0; i < data.grid.size(); ++i) {
    out.u_minus[i] += scale * noise.u_minus[i];
    out.u_plus[i] += scale * noise.u_plus[i];
  }
  return out;
}

SpectralFactorization::SpectralFactorization(const ForwardOperator& op) : op_(op), weighted_(op.weighted()) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  u_ = svd.matrixU();
  v_ = svd.matrixV();
  sigma_ = svd.singularValues();
}

Eigen::VectorXcd SpectralFactorization::solve_tikhonov(const Eigen::VectorXcd& d, double lambda) const {
  const Eigen::VectorXcd beta = u_.adjoint() * d;
  Eigen::VectorXcd scaled(beta.size());
  for (Eigen::Index k = 0; k < beta.size(); ++k) {
    const double s = sigma_(k);
    const double denom = s * s + lambda * lambda;
    scaled(k) = denom > 0.0 ? beta(k) * (s / denom) : cplx{};
  }
  return v_ * scaled;
}

Eigen::VectorXcd SpectralFactorization::solve_tsvd(const Eigen::VectorXcd& d, int k) const {
  const Eigen::VectorXcd beta = u_.adjoint() * d;
  Eigen::VectorXcd scaled = Eigen::VectorXcd::Zero(beta.size());
  for (int j = 0; j < k; ++j) scaled(j) = sigma_(j) > 0.0 ? beta(j) / sigma_(j) : cplx{};
  return v_ * scaled;
}

double SpectralFactorization::residual(const Eigen::VectorXcd& coeffs, const Eigen::VectorXcd& d) const {
  return (weighted_ * coeffs - d).norm();
}

ReconstructionResult reconstruct_tikhonov(const SpectralFactorization& fac, const BoundaryData& data, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("reconstruct_tikhonov: lambda must be positive");
  const Eigen::VectorXcd d = weighted_stack(fac.op(), data);
  const Eigen::VectorXcd c = fac.solve_tikhonov(d, lambda);
  ReconstructionResult r = gridded_result(fac.op(), c);
  r.method = "tikhonov";
  r.reg_param = lambda;
  r.residual = fac.residual(c, d);
  const auto& s = fac.singular_values();
  const double smax = s(0), smin = s(s.size() - 1);
  const double cond = (smax * smax + lambda * lambda) / (smin * smin + lambda * lambda);
  if (cond > 1e12) r.warnings.push_back("ill-conditioned regularized system, condition estimate " + sci(cond));
  return r;
}

ReconstructionResult reconstruct_tikhonov(const ForwardOperator& op, const BoundaryData& data, double lambda) {
  return reconstruct_tikhonov(SpectralFactorization(op), data, lambda);
}

ReconstructionResult reconstruct_tsvd(const SpectralFactorization& fac, const BoundaryData& data, int k) {
  const auto& s = fac.singular_values();
  if (k < 1 || k > s.size())
    throw ValidationError("reconstruct_tsvd: k must lie in [1, " + std::to_string(s.size()) + "]");
  const Eigen::VectorXcd d = weighted_stack(fac.op(), data);
  const Eigen::VectorXcd c = fac.solve_tsvd(d, k);
  ReconstructionResult r = gridded_result(fac.op(), c);
  r.method = "tsvd";
  r.reg_param = k;
  r.residual = fac.residual(c, d);
  if (s(k - 1) < 1e-14 * s(0))
    r.warnings.push_back("rank deficiency: sigma_k / sigma_1 = " + sci(s(k - 1) / s(0)));
  return r;
}

ReconstructionResult reconstruct_tsvd(const ForwardOperator& op, const BoundaryData& data, int k) {
  return reconstruct_tsvd(SpectralFactorization(op), data, k);
}

std::vector<double> lambda_ladder(double hi, double lo, int count) {
  if (!(hi > 0.0 && lo > 0.0) || count < 2) throw ValidationError("lambda_ladder: need positive bounds and count >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double r = std::log(lo / hi) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = hi * std::exp(r * i);
  return out;
}

double discrepancy_lambda(const SpectralFactorization& fac, const BoundaryData& data, double eps,
                          const std::vector<double>& ladder, double tau) {
  if (ladder.empty()) throw ValidationError("discrepancy_lambda: empty ladder");
  const Eigen::VectorXcd d = weighted_stack(fac.op(), data);
  double best = *std::min_element(ladder.begin(), ladder.end());
  double best_ok = -1.0;
  for (double lam : ladder) {
    const double res = fac.residual(fac.solve_tikhonov(d, lam), d);
    if (res <= tau * eps && lam > best_ok) best_ok = lam;
  }
  return best_ok > 0.0 ? best_ok : best;
}

ReconstructionResult reconstruct_homogeneous(const BoundaryData& data, const Medium& medium,
                                             const std::vector<double>& x_grid, double omega_floor) {
  if (!medium.homogeneous()) throw ValidationError("reconstruct_homogeneous: requires c1 == c2");
  if (data.grid[0] < omega_floor)
    throw ValidationError("reconstruct_homogeneous: frequency " + std::to_string(data.grid[0]) +
                          " lies below the floor " + std::to_string(omega_floor));
  const double c = medium.c1();
  const std::size_t m = data.grid.size();
  // xi ascending: -c w_N .. -c w_1, c w_1 .. c w_N
  std::vector<double> xi(2 * m);
  std::vector<cplx> fhat(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = data.grid[i];
    const cplx factor = -2.0 * I * c * w * std::polar(1.0, -c * w);
    xi[m - 1 - i] = -c * w;
    fhat[m - 1 - i] = factor * data.u_minus[i];
    xi[m + i] = c * w;
    fhat[m + i] = factor * data.u_plus[i];
  }
  std::vector<double> wt(2 * m, 0.0);
  for (std::size_t k = 0; k + 1 < 2 * m; ++k) {
    const double d = 0.5 * (xi[k + 1] - xi[k]);
    wt[k] += d;
    wt[k + 1] += d;
  }
  ReconstructionResult r;
  r.method = "homogeneous_ft";
  r.reg_param = c * data.grid.band_limit();
  r.x = x_grid;
  r.f_est.assign(x_grid.size(), cplx{});
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    cplx sum{};
    for (std::size_t k = 0; k < xi.size(); ++k) sum += wt[k] * fhat[k] * std::polar(1.0, xi[k] * x_grid[j]);
    r.f_est[j] = sum / (2.0 * std::numbers::pi);
  }
  return r;
}

double recon_error(const std::vector<double>& x, const std::vector<cplx>& f_est, const SourceSpec& f_true) {
  if (x.size() != f_est.size() || x.size() < 2) throw ValidationError("recon_error: incompatible grid");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = std::norm(f_est[i] - f_true.value(x[i]));
    const double b = std::norm(f_est[i + 1] - f_true.value(x[i + 1]));
    sum += 0.5 * (x[i + 1] - x[i]) * (a + b);
  }
  return std::sqrt(sum);
}

double recon_error(const ReconstructionResult& r, const SourceSpec& f_true) { return recon_error(r.x, r.f_est, f_true); }

double grid_l2_norm(const std::vector<double>& x, const SourceSpec& f) {
  return recon_error(x, std::vector<cplx>(x.size(), cplx{}), f);
}

}  // namespace twolayer
