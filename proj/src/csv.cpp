#include "twolayer/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "twolayer/errors.hpp"

namespace twolayer {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void write_boundary_csv(std::ostream& out, const BoundaryData& data) {
  out << "omega,re_u_minus,im_u_minus,re_u_plus,im_u_plus\n";
  for (std::size_t i = 0; i < data.grid.size(); ++i) {
    out << format_double(data.grid[i]) << ',' << format_double(data.u_minus[i].real()) << ','
        << format_double(data.u_minus[i].imag()) << ',' << format_double(data.u_plus[i].real()) << ','
        << format_double(data.u_plus[i].imag()) << '\n';
  }
}

void write_boundary_csv(const std::string& path, const BoundaryData& data) {
  std::ofstream out = open_output(path);
  write_boundary_csv(out, data);
  if (!out) throw IoError("write failed for '" + path + "'");
}

BoundaryData read_boundary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("omega,re_u_minus,im_u_minus,re_u_plus,im_u_plus", 0) != 0)
    throw IoError(path + ": missing or unexpected header");
  std::vector<double> omega;
  std::vector<cplx> um, up;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[5];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 5; ++k) {
      const auto res = std::from_chars(p, end, v[k]);
      if (res.ec != std::errc()) throw IoError(path + ":" + std::to_string(lineno) + ": malformed number");
      p = res.ptr;
      if (k < 4) {
        if (p == end || *p != ',') throw IoError(path + ":" + std::to_string(lineno) + ": expected 5 columns");
        ++p;
      }
    }
    if (p != end) throw IoError(path + ":" + std::to_string(lineno) + ": trailing characters");
    omega.push_back(v[0]);
    um.emplace_back(v[1], v[2]);
    up.emplace_back(v[3], v[4]);
  }
  if (omega.empty()) throw IoError(path + ": no data rows");
  const double K = omega.back();
  BoundaryData data(FrequencyGrid(std::move(omega), K));
  data.u_minus = std::move(um);
  data.u_plus = std::move(up);
  return data;
}

void write_reconstruction_csv(const std::string& path, const ReconstructionResult& result,
                              const std::optional<SourceSpec>& truth) {
  std::ofstream out = open_output(path);
  out << "x,re_f_est,im_f_est" << (truth ? ",re_f_true,im_f_true" : "") << '\n';
  for (std::size_t i = 0; i < result.x.size(); ++i) {
    out << format_double(result.x[i]) << ',' << format_double(result.f_est[i].real()) << ','
        << format_double(result.f_est[i].imag());
    if (truth) {
      const cplx t = truth->value(result.x[i]);
      out << ',' << format_double(t.real()) << ',' << format_double(t.imag());
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace twolayer
