#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "twolayer/forward.hpp"
#include "twolayer/source.hpp"

namespace twolayer {

// Fourier convention: f^(xi) = int e^{-i xi y} f(y) dy, Plancherel constant 1/(2 pi).

/// Half-line transform by composite Gauss-Legendre over the side's support,
/// refined so that |xi| * (panel width) <= plan.max_phase.
cplx halfline_ft(const SourcePair& pair, Side side, double xi, const PanelPlan& plan = {});

/// Half-line transforms through Legendre panel interpolants of f integrated
/// exactly against e^{-i xi y}; cost does not grow with |xi|, exact for the
/// piecewise polynomial source kinds.  Build once per source.
class HalflineTransformer {
 public:
  explicit HalflineTransformer(const SourcePair& pair, int panels_per_piece = 32, int nodes = 16);

  cplx operator()(Side side, double xi) const;

 private:
  std::vector<LegendrePanel> right_;
  std::vector<LegendrePanel> left_;
};

/// omega * u(-1, omega) and omega * u(1, omega) up to the common factor i, from
/// the four half-line transforms f1^(-+c1 omega), f2^(+-c2 omega).
struct ScaledEndpoints {
  cplx minus;
  cplx plus;
};
ScaledEndpoints scaled_endpoints(const HalflineTransformer& ft, const Medium& medium, double omega);

/// ||f1||^2 + ||f2||^2 against (1/2pi) int_{-xi_max}^{xi_max} (|f1^|^2 + |f2^|^2),
/// trapezoid with n_xi intervals on the xi side.
struct PlancherelReport {
  double spatial = 0.0;
  double spectral = 0.0;
  double residual = 0.0;
};
PlancherelReport plancherel_residual(const SourcePair& pair, double xi_max, int n_xi);

/// I1(s) = int_0^s |omega u(-1)|^2, I2(s) = int_0^s |omega u(1)|^2.
struct DataEnergy {
  cplx s;
  cplx I1, I2, I;
};

/// Data energy from the explicit half-line representation; omega in (0, s)
/// integrated with n_panels Gauss-Legendre panels of 16 nodes.
DataEnergy data_energy(const SourceSpec& f, const Medium& medium, double s, int n_panels);

/// The same integrals computed from forward_field at x = -+1 on the same omega nodes.
DataEnergy data_energy_forward(const SourceSpec& f, const Medium& medium, double s, int n_panels,
                               const QuadratureSettings& settings = {});

/// Continuation to complex s through omega = s t: I_j(s) = s int_0^1 F(st) G(st) dt with
/// G(w) = conj(F(conj w)), which equals |F|^2 on the real axis.
DataEnergy data_energy_analytic(const SourceSpec& f, const Medium& medium, cplx s, int n_panels);

/// Square root of the trapezoid value of int_0^K omega^2 (|u(-1)|^2 + |u(1)|^2).
double epsilon_norm(const BoundaryData& data);

struct TailFit {
  std::vector<double> s;
  std::vector<double> tail;  // T(s) = int_s^cap omega^2 (|u(-1)|^2 + |u(1)|^2)
  double slope = 0.0;
  double r2 = 0.0;
};

/// Tail integrals on s_list (increasing) and their log-log least-squares slope.
TailFit tail_decay_fit(const SourceSpec& f, const Medium& medium, std::span<const double> s_list, double omega_cap);

/// Endpoint integral int_lo^hi omega^2 (|u(-1)|^2 + |u(1)|^2) via the spectral route.
double endpoint_energy(const HalflineTransformer& ft, const Medium& medium, double lo, double hi);

struct Lemma32Check {
  double lhs_minus = 0.0, rhs_minus = 0.0;
  double lhs_plus = 0.0, rhs_plus = 0.0;

  bool holds(double slack = 1e-12) const;
};

/// omega^2 |u(-+1)|^2 from the forward solver against the squared triangle
/// bound with the explicit layer coefficients.
Lemma32Check lemma32_check(const SourceSpec& f, const Medium& medium, double omega,
                           const QuadratureSettings& settings = {});

using SourceSampler = std::function<SourceSpec(std::mt19937_64&)>;

struct Lemma31Result {
  double constant = 0.0;        // max ratio
  std::vector<double> ratios;   // per trial
};

/// max over trials of ||f||^2 / int_0^cap omega^2 (|u(-1)|^2 + |u(1)|^2).  Trial t
/// draws from an engine seeded with derive_seed(seed, t).
Lemma31Result lemma31_constant(const SourceSampler& sampler, const Medium& medium, double omega_cap, int trials,
                               std::uint64_t seed);

/// Order-independent per-task seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// L2(-1,1) norm squared of a source by fine Gauss-Legendre quadrature.
double l2_norm_squared(const SourceSpec& f);

}  // namespace twolayer
