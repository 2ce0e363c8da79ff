#include "twolayer/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected a number, got '" + v + "'");
  }
}

long long to_integer(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError(where + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + f(xs[i]);
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"medium.c1", [](RunConfig& c, const std::string& v, const std::string& w) { c.c1 = to_double(v, w); }},
      {"medium.c2", [](RunConfig& c, const std::string& v, const std::string& w) { c.c2 = to_double(v, w); }},
      {"frequency.K", [](RunConfig& c, const std::string& v, const std::string& w) { c.K = to_double(v, w); }},
      {"frequency.n_omega",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.n_omega = static_cast<int>(to_integer(v, w)); }},
      {"frequency.omega_floor",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.omega_floor = to_double(v, w); }},
      {"source.kind", [](RunConfig& c, const std::string& v, const std::string&) { c.source_kind = v; }},
      {"source.a", [](RunConfig& c, const std::string& v, const std::string& w) { c.source_a = to_double(v, w); }},
      {"source.b", [](RunConfig& c, const std::string& v, const std::string& w) { c.source_b = to_double(v, w); }},
      {"source.order",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.source_order = static_cast<int>(to_integer(v, w)); }},
      {"source.mod_freq",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.source_mod_freq = to_double(v, w); }},
      {"source.amp_re", [](RunConfig& c, const std::string& v, const std::string& w) { c.source_amp_re = to_double(v, w); }},
      {"source.amp_im", [](RunConfig& c, const std::string& v, const std::string& w) { c.source_amp_im = to_double(v, w); }},
      {"inverse.method", [](RunConfig& c, const std::string& v, const std::string&) { c.method = v; }},
      {"inverse.lambda", [](RunConfig& c, const std::string& v, const std::string& w) { c.lambda = to_double(v, w); }},
      {"inverse.lambda_rule", [](RunConfig& c, const std::string& v, const std::string&) { c.lambda_rule = v; }},
      {"inverse.k",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.tsvd_k = static_cast<int>(to_integer(v, w)); }},
      {"inverse.n_basis",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.n_basis = static_cast<int>(to_integer(v, w)); }},
      {"inverse.a", [](RunConfig& c, const std::string& v, const std::string& w) { c.basis_a = to_double(v, w); }},
      {"inverse.b", [](RunConfig& c, const std::string& v, const std::string& w) { c.basis_b = to_double(v, w); }},
      {"noise.eps", [](RunConfig& c, const std::string& v, const std::string& w) { c.eps = to_double(v, w); }},
      {"noise.seed",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         const long long s = to_integer(v, w);
         if (s < 0) throw ValidationError(w + ": seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"sweep.K_list",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.sweep_K.clear();
         for (const auto& s : split_list(v)) c.sweep_K.push_back(to_double(s, w));
       }},
      {"sweep.eps_list",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.sweep_eps.clear();
         for (const auto& s : split_list(v)) c.sweep_eps.push_back(to_double(s, w));
       }},
      {"sweep.n_list",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.sweep_n.clear();
         for (const auto& s : split_list(v)) c.sweep_n.push_back(static_cast<int>(to_integer(s, w)));
       }},
      {"sweep.trials",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.sweep_trials = static_cast<int>(to_integer(v, w)); }},
      {"quadrature.panels",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.quad_panels = static_cast<int>(to_integer(v, w)); }},
      {"quadrature.nodes",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.quad_nodes = static_cast<int>(to_integer(v, w)); }},
      {"verify.corrupt_radiation_sign",
       [](RunConfig& c, const std::string& v, const std::string& w) { c.verify_corrupt_radiation_sign = to_bool(v, w); }},
  };
  return table;
}

}  // namespace

SourceSpec RunConfig::source() const {
  const cplx amp(source_amp_re, source_amp_im);
  switch (source_kind_from_string(source_kind)) {
    case SourceKind::bump: return SourceSpec::bump(source_a, source_b, amp);
    case SourceKind::bspline: return SourceSpec::bspline(source_a, source_b, source_order, amp);
    case SourceKind::modulated_bump: return SourceSpec::modulated_bump(source_a, source_b, source_mod_freq, amp);
    case SourceKind::grid: break;
  }
  throw ValidationError("source.kind: grid sources cannot be declared in a config file");
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("invalid config: " + what);
  };
  require(c1 > 0.0 && std::isfinite(c1), "medium.c1 must be positive");
  require(c2 > 0.0 && std::isfinite(c2), "medium.c2 must be positive");
  require(K > 0.0 && std::isfinite(K), "frequency.K must be positive");
  require(n_omega >= 1, "frequency.n_omega must be at least 1");
  require(!omega_floor || *omega_floor >= 0.0, "frequency.omega_floor must be non-negative");
  require(source_a > -1.0 && source_b < 1.0 && source_a < source_b,
          "source support must satisfy -1 < source.a < source.b < 1");
  require(source_order >= 1 && source_order <= 12, "source.order must lie in [1, 12]");
  (void)source();
  require(method == "tikhonov" || method == "tsvd" || method == "homogeneous_ft",
          "inverse.method must be tikhonov, tsvd or homogeneous_ft");
  require(lambda > 0.0, "inverse.lambda must be positive");
  require(lambda_rule == "fixed" || lambda_rule == "discrepancy", "inverse.lambda_rule must be fixed or discrepancy");
  require(tsvd_k >= 0, "inverse.k must be non-negative");
  require(n_basis >= 8, "inverse.n_basis must be at least 8");
  require(basis_a > -1.0 && basis_b < 1.0 && basis_a < basis_b,
          "basis support must satisfy -1 < inverse.a < inverse.b < 1");
  require(method != "homogeneous_ft" || c1 == c2, "inverse.method homogeneous_ft requires medium.c1 == medium.c2");
  require(eps >= 0.0, "noise.eps must be non-negative");
  require(!sweep_K.empty() && std::all_of(sweep_K.begin(), sweep_K.end(), [](double k) { return k > 0.0; }),
          "sweep.K_list must hold positive values");
  require(!sweep_eps.empty() && std::all_of(sweep_eps.begin(), sweep_eps.end(), [](double e) { return e >= 0.0; }),
          "sweep.eps_list must hold non-negative values");
  require(!sweep_n.empty() && std::all_of(sweep_n.begin(), sweep_n.end(), [](int n) { return n >= 1 && n <= 12; }),
          "sweep.n_list must hold orders in [1, 12]");
  require(sweep_trials >= 1, "sweep.trials must be at least 1");
  require(quad_panels >= 1 && quad_nodes >= 1 && quad_nodes <= 256, "quadrature settings out of range");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ValidationError(where + ": unknown key '" + key + "'");
    it->second(cfg, value, where + " (" + key + ")");
    if (key.rfind("source.", 0) == 0) cfg.source_given = true;
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os << "medium.c1 = " << fmt(c.c1) << "\n";
  os << "medium.c2 = " << fmt(c.c2) << "\n";
  os << "frequency.K = " << fmt(c.K) << "\n";
  os << "frequency.n_omega = " << c.n_omega << "\n";
  if (c.omega_floor) os << "frequency.omega_floor = " << fmt(*c.omega_floor) << "\n";
  if (c.source_given) {
    os << "source.kind = " << c.source_kind << "\n";
    os << "source.a = " << fmt(c.source_a) << "\n";
    os << "source.b = " << fmt(c.source_b) << "\n";
    os << "source.order = " << c.source_order << "\n";
    os << "source.mod_freq = " << fmt(c.source_mod_freq) << "\n";
    os << "source.amp_re = " << fmt(c.source_amp_re) << "\n";
    os << "source.amp_im = " << fmt(c.source_amp_im) << "\n";
  }
  os << "inverse.method = " << c.method << "\n";
  os << "inverse.lambda = " << fmt(c.lambda) << "\n";
  os << "inverse.lambda_rule = " << c.lambda_rule << "\n";
  os << "inverse.k = " << c.tsvd_k << "\n";
  os << "inverse.n_basis = " << c.n_basis << "\n";
  os << "inverse.a = " << fmt(c.basis_a) << "\n";
  os << "inverse.b = " << fmt(c.basis_b) << "\n";
  os << "noise.eps = " << fmt(c.eps) << "\n";
  os << "noise.seed = " << c.seed << "\n";
  os << "sweep.K_list = " << join(c.sweep_K, fmt) << "\n";
  os << "sweep.eps_list = " << join(c.sweep_eps, fmt) << "\n";
  os << "sweep.n_list = " << join(c.sweep_n, [](int n) { return std::to_string(n); }) << "\n";
  os << "sweep.trials = " << c.sweep_trials << "\n";
  os << "quadrature.panels = " << c.quad_panels << "\n";
  os << "quadrature.nodes = " << c.quad_nodes << "\n";
  os << "verify.corrupt_radiation_sign = " << (c.verify_corrupt_radiation_sign ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace twolayer
