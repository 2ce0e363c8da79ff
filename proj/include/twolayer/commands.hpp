#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "twolayer/config.hpp"
#include "twolayer/inverse.hpp"

namespace twolayer {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitCheckFailed = 3, kExitIo = 4 };

struct VerifyCheck {
  std::string name;
  double value = 0.0;      // worst residual (or violation count)
  double threshold = 0.0;
  bool passed = false;
};

/// Identity battery on deterministic draws seeded from config.seed.
std::vector<VerifyCheck> run_verify(const RunConfig& config);

int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_forward(const RunConfig& config, const std::string& out_path, std::ostream& log);
int cmd_reconstruct(const RunConfig& config, const std::string& data_path, const std::string& out_path,
                    std::ostream& log);
int cmd_sweep(const RunConfig& config, const std::string& out_path, std::ostream& log, bool timing = false);

/// Run the configured inversion on data.
ReconstructionResult reconstruct(const RunConfig& config, const BoundaryData& data);

struct ExperimentRecord {
  double K = 0.0;
  double eps = 0.0;
  int n = 0;
  int trial = 0;
  std::string method;
  double reg_param = 0.0;
  double l2_error = 0.0;  // relative: ||f_est - f|| / ||f|| on the reconstruction grid
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::string error;
};

/// Order-n member of the sweep family: cardinal B-spline of order n with knot
/// spacing in [0.25, 0.35] (support n * spacing), random centre in [-0.3, 0.3]
/// and random complex amplitude.  Orders share one spectral scale.
SourceSpec sweep_source(int n, std::mt19937_64& rng);

/// All (K, eps, n, trial) cells in K-major order.  OpenMP over cells.
std::vector<ExperimentRecord> run_sweep(const RunConfig& config);
std::vector<ExperimentRecord> run_sweep_serial(const RunConfig& config);

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records, bool timing);

}  // namespace twolayer
