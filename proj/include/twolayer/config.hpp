#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twolayer/forward.hpp"
#include "twolayer/medium.hpp"
#include "twolayer/source.hpp"

namespace twolayer {

/// Flat `section.key = value` configuration.  '#' starts a comment; blank lines
/// are ignored; lists are comma separated.
struct RunConfig {
  // medium
  double c1 = 1.0;
  double c2 = 1.5;
  // frequency
  double K = 40.0;
  int n_omega = 400;
  std::optional<double> omega_floor;  // defaults to K / n_omega
  // source
  std::string source_kind = "bump";
  double source_a = -0.5;
  double source_b = 0.5;
  int source_order = 2;
  double source_mod_freq = 5.0;
  double source_amp_re = 1.0;
  double source_amp_im = 0.0;
  bool source_given = false;  // any source.* key present in the file
  // inverse
  std::string method = "tikhonov";  // tikhonov | tsvd | homogeneous_ft
  double lambda = 1e-6;
  std::string lambda_rule = "fixed";  // fixed | discrepancy
  int tsvd_k = 0;                     // 0 means full rank
  int n_basis = 201;
  double basis_a = -0.9;
  double basis_b = 0.9;
  // noise
  double eps = 0.0;
  std::uint64_t seed = 7;
  // sweep
  std::vector<double> sweep_K{5.0, 10.0, 20.0, 40.0};
  std::vector<double> sweep_eps{0.0, 1e-3, 1e-2, 1e-1};
  std::vector<int> sweep_n{1, 2, 3};
  int sweep_trials = 10;
  // quadrature
  int quad_panels = 8;
  int quad_nodes = 16;
  // verify test hook: flips the sign of the radiation impedance term
  bool verify_corrupt_radiation_sign = false;

  Medium medium() const { return Medium(c1, c2); }
  FrequencyGrid frequency_grid() const { return FrequencyGrid::uniform(K, n_omega); }
  double floor() const { return omega_floor.value_or(K / n_omega); }
  SourceSpec source() const;
  QuadratureSettings quadrature() const { return {quad_panels, quad_nodes, 2.0}; }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RunConfig parse_config(const std::string& path);
std::string serialize(const RunConfig& config);

}  // namespace twolayer
