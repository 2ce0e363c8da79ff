#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twolayer/forward.hpp"
#include "twolayer/inverse.hpp"

namespace twolayer {

/// 17 significant digits, the round-trip precision for doubles.
std::string format_double(double v);

// omega,re_u_minus,im_u_minus,re_u_plus,im_u_plus
void write_boundary_csv(std::ostream& out, const BoundaryData& data);
void write_boundary_csv(const std::string& path, const BoundaryData& data);
/// Reads frequencies and fields; K is taken as the last frequency.
BoundaryData read_boundary_csv(const std::string& path);

// x,re_f_est,im_f_est[,re_f_true,im_f_true]
void write_reconstruction_csv(const std::string& path, const ReconstructionResult& result,
                              const std::optional<SourceSpec>& truth);

/// Generic CSV with a header and rows of doubles.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Opens a file for writing or throws IoError naming the path.
std::ofstream open_output(const std::string& path);

}  // namespace twolayer
