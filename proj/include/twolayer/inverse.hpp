#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twolayer/forward.hpp"
#include "twolayer/medium.hpp"
#include "twolayer/source.hpp"

namespace twolayer {

/// Dense map from hat-function coefficients to stacked endpoint data
/// [u(-1, omega_1..N); u(1, omega_1..N)].  Hats sit on n_basis interior nodes of a
/// uniform grid on [a, b], so every expansion vanishes at a and b.
struct ForwardOperator {
  Medium medium;
  FrequencyGrid grid;
  double a = 0.0, b = 0.0, h = 0.0;
  std::vector<double> nodes;        // hat centres
  Eigen::MatrixXcd matrix;          // unweighted
  std::vector<double> row_weights;  // omega_i * sqrt(trapezoid weight), repeated for both endpoints

  Eigen::MatrixXcd weighted() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& coeffs) const;  // unweighted stacked data
  BoundaryData apply_as_data(const Eigen::VectorXcd& coeffs) const;
  /// Gridded source with the hat expansion of coeffs (zero at a and b).
  SourceSpec as_source(const Eigen::VectorXcd& coeffs) const;
};

/// Columns from the exact piecewise-linear transforms of each hat.  OpenMP over columns.
ForwardOperator assemble_operator(const Medium& medium, const FrequencyGrid& grid, int n_basis, double a, double b);
ForwardOperator assemble_operator_serial(const Medium& medium, const FrequencyGrid& grid, int n_basis, double a,
                                         double b);

Eigen::VectorXcd stack(const BoundaryData& data);
Eigen::VectorXcd weighted_stack(const ForwardOperator& op, const BoundaryData& data);

/// Complex circular Gaussian perturbation rescaled so epsilon_norm(noise) == eps_target.
BoundaryData add_noise(const BoundaryData& data, double eps_target, std::uint64_t seed);

struct ReconstructionResult {
  std::vector<double> x;
  std::vector<cplx> f_est;
  std::string method;
  double reg_param = 0.0;
  double residual = 0.0;  // weighted data misfit, same metric as epsilon_norm
  std::optional<double> l2_error;
  std::vector<std::string> warnings;
};

/// SVD of the weighted operator, reusable across data sets and regularisation parameters.
class SpectralFactorization {
 public:
  explicit SpectralFactorization(const ForwardOperator& op);

  const ForwardOperator& op() const { return op_; }
  const Eigen::VectorXd& singular_values() const { return sigma_; }

  /// Filtered solution sum_k phi_k / sigma_k (u_k^H d) v_k.
  Eigen::VectorXcd solve_tikhonov(const Eigen::VectorXcd& weighted_data, double lambda) const;
  Eigen::VectorXcd solve_tsvd(const Eigen::VectorXcd& weighted_data, int k) const;
  double residual(const Eigen::VectorXcd& coeffs, const Eigen::VectorXcd& weighted_data) const;

 private:
  ForwardOperator op_;
  Eigen::MatrixXcd weighted_;
  Eigen::MatrixXcd u_;
  Eigen::MatrixXcd v_;
  Eigen::VectorXd sigma_;
};

ReconstructionResult reconstruct_tikhonov(const SpectralFactorization& fac, const BoundaryData& data, double lambda);
ReconstructionResult reconstruct_tikhonov(const ForwardOperator& op, const BoundaryData& data, double lambda);
ReconstructionResult reconstruct_tsvd(const SpectralFactorization& fac, const BoundaryData& data, int k);
ReconstructionResult reconstruct_tsvd(const ForwardOperator& op, const BoundaryData& data, int k);

/// Largest lambda on the ladder whose weighted residual is <= tau * eps
/// (smallest lambda when none qualifies).
double discrepancy_lambda(const SpectralFactorization& fac, const BoundaryData& data, double eps,
                          const std::vector<double>& ladder, double tau = 1.1);

/// Logarithmic ladder from hi down to lo.
std::vector<double> lambda_ladder(double hi, double lo, int count);

/// Direct inversion for c1 = c2 = c: f^(+-c omega) = -2 i c omega e^{-i c omega} u(+-1, omega),
/// then the band-limited inverse transform (trapezoid over |xi| <= c K) on x_grid.
ReconstructionResult reconstruct_homogeneous(const BoundaryData& data, const Medium& medium,
                                             const std::vector<double>& x_grid, double omega_floor = 0.0);

/// Trapezoid L2 norm of (f_est - f_true) on the reconstruction grid.
double recon_error(const std::vector<double>& x, const std::vector<cplx>& f_est, const SourceSpec& f_true);
double recon_error(const ReconstructionResult& r, const SourceSpec& f_true);

/// Trapezoid L2 norm of f_true on the same grid, for relative errors.
double grid_l2_norm(const std::vector<double>& x, const SourceSpec& f);

}  // namespace twolayer
