#include "tfd/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace tfd {

ModelParams RunConfig::model(double beta) const {
  return {omega, std::polar(kappa_abs, kappa_arg), beta};
}

std::vector<double> RunConfig::tomogram_points() const {
  if (!tomogram_qs.empty()) return tomogram_qs;
  std::vector<double> qs;
  for (int i = 0; i <= 20; ++i) qs.push_back(-5.0 + 0.5 * double(i));
  return qs;
}

void RunConfig::validate() const {
  if (betas.empty()) throw ConfigError("config: beta list is empty");
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) {
      throw ConfigError("config: beta sweep must be strictly increasing");
    }
  }
  for (const double b : betas) {
    if (!std::isfinite(b) || b <= 0.0) {
      throw ConfigError("config: beta values must be finite and positive");
    }
  }
  if (cutoff < 0) throw ConfigError("config: cutoff must be >= 0");
  if (threads < 1) throw ConfigError("config: threads must be >= 1");
  if (format != "csv" && format != "json") {
    throw ConfigError("config: format must be csv or json");
  }
  if (state_route != "eq28" && state_route != "spectral" &&
      state_route != "a9" && state_route != "a10" && state_route != "free") {
    throw ConfigError("config: state route must be one of eq28|spectral|a9|a10|free");
  }
  try {
    policy.validate();
    for (const auto& f : frames) f.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> parse_sweep(const std::string& spec) {
  double start = 0, stop = 0;
  int count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 ||
      count < 2 || !(stop > start)) {
    throw ConfigError("sweep spec must be start:stop:count with stop > start, count >= 2: " + spec);
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(start + (stop - start) * double(i) / double(count - 1));
  }
  return out;
}

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &g.qmin, &g.qmax, &g.step) != 3 ||
      !(g.qmax > g.qmin) || !(g.step > 0)) {
    throw ConfigError("grid spec must be qmin:qmax:step: " + spec);
  }
  g.auto_extent = false;
  return g;
}

QuadratureFrame parse_frame(const std::string& spec) {
  QuadratureFrame f;
  if (std::sscanf(spec.c_str(), "%lf,%lf", &f.f, &f.g) != 2) {
    throw ConfigError("frame spec must be f,g: " + spec);
  }
  if (f.norm2() <= 0.0) throw ConfigError("frame (f,g) must be nonzero: " + spec);
  return f;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> RunConfig::read_key_values(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: empty key at line " + std::to_string(lineno));
    }
    kv[key] = value;
  }
  return kv;
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + key + ": " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for " + key + ": " + v);
  }
}

std::map<std::string, double ToleranceProfile::*> tolerance_fields() {
  return {
      {"hermiticity", &ToleranceProfile::hermiticity},
      {"eig_reconstruction", &ToleranceProfile::eig_reconstruction},
      {"spectral_sum_rel", &ToleranceProfile::spectral_sum_rel},
      {"trace_preserve_rel", &ToleranceProfile::trace_preserve_rel},
      {"series_match", &ToleranceProfile::series_match},
      {"unit_trace", &ToleranceProfile::unit_trace},
      {"psd_floor", &ToleranceProfile::psd_floor},
      {"state_norm", &ToleranceProfile::state_norm},
      {"truncation_target", &ToleranceProfile::truncation_target},
      {"reassembly_maxabs", &ToleranceProfile::reassembly_maxabs},
      {"branch_match", &ToleranceProfile::branch_match},
      {"param_identity_rel", &ToleranceProfile::param_identity_rel},
      {"gauss_quadrature_abs", &ToleranceProfile::gauss_quadrature_abs},
      {"z_match_rel", &ToleranceProfile::z_match_rel},
      {"trace_norm_identity", &ToleranceProfile::trace_norm_identity},
      {"thermo_match_rel", &ToleranceProfile::thermo_match_rel},
      {"sum_rule_rel", &ToleranceProfile::sum_rule_rel},
      {"log_z_derivative_rel", &ToleranceProfile::log_z_derivative_rel},
      {"entropy_invariance", &ToleranceProfile::entropy_invariance},
      {"offdiag_block_abs", &ToleranceProfile::offdiag_block_abs},
      {"degeneration_exact", &ToleranceProfile::degeneration_exact},
      {"degeneration_limit", &ToleranceProfile::degeneration_limit},
      {"wigner_abs", &ToleranceProfile::wigner_abs},
      {"wigner_norm_abs", &ToleranceProfile::wigner_norm_abs},
      {"wigner_support_tail", &ToleranceProfile::wigner_support_tail},
      {"tomogram_abs", &ToleranceProfile::tomogram_abs},
      {"profile_norm_abs", &ToleranceProfile::profile_norm_abs},
      {"radon_edge_support", &ToleranceProfile::radon_edge_support},
  };
}

}  // namespace

void RunConfig::apply_key_values(const std::map<std::string, std::string>& kv) {
  const auto tol_fields = tolerance_fields();
  for (const auto& [key, value] : kv) {
    if (key == "omega") omega = to_double(key, value);
    else if (key == "kappa_abs") kappa_abs = to_double(key, value);
    else if (key == "kappa_arg") kappa_arg = to_double(key, value);
    else if (key == "beta") betas = {to_double(key, value)};
    else if (key == "beta_sweep") betas = parse_sweep(value);
    else if (key == "cutoff") cutoff = to_int(key, value);
    else if (key == "auto_cutoff") cutoff = (value == "true" || value == "1") ? 0 : cutoff;
    else if (key == "initial_cutoff") policy.initial_cutoff = to_int(key, value);
    else if (key == "growth") policy.growth = to_double(key, value);
    else if (key == "tol") policy.target_tolerance = to_double(key, value);
    else if (key == "max_cutoff") policy.max_cutoff = to_int(key, value);
    else if (key == "grid") grid = parse_grid(value);
    else if (key == "frames") {
      frames.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ';')) frames.push_back(parse_frame(item));
      if (frames.empty()) throw ConfigError("config: frames list is empty");
    }
    else if (key == "state_route") state_route = value;
    else if (key == "format") format = value;
    else if (key == "out") out_path = value;
    else if (key == "threads") threads = to_int(key, value);
    else if (key.rfind("tol.", 0) == 0) {
      const std::string name = key.substr(4);
      const auto it = tol_fields.find(name);
      if (it == tol_fields.end()) {
        throw ConfigError("config: unknown tolerance field " + name);
      }
      tol.*(it->second) = to_double(key, value);
    }
    else {
      throw ConfigError("config: unknown key " + key);
    }
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("omega", format_double(omega));
  out.emplace_back("kappa_abs", format_double(kappa_abs));
  out.emplace_back("kappa_arg", format_double(kappa_arg));
  {
    std::string b;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      if (i) b += ",";
      b += format_double(betas[i]);
    }
    out.emplace_back("beta", b);
  }
  out.emplace_back("cutoff", std::to_string(cutoff));
  out.emplace_back("initial_cutoff", std::to_string(policy.initial_cutoff));
  out.emplace_back("growth", format_double(policy.growth));
  out.emplace_back("tol", format_double(policy.target_tolerance));
  out.emplace_back("max_cutoff", std::to_string(policy.max_cutoff));
  out.emplace_back("grid", format_double(grid.qmin) + ":" + format_double(grid.qmax) +
                               ":" + format_double(grid.step) +
                               (grid.auto_extent ? " (auto extent)" : ""));
  {
    std::string fr;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (i) fr += ";";
      fr += format_double(frames[i].f) + "," + format_double(frames[i].g);
    }
    out.emplace_back("frames", fr);
  }
  out.emplace_back("state_route", state_route);
  out.emplace_back("format", format);
  out.emplace_back("threads", std::to_string(threads));
  const auto fields = tolerance_fields();
  for (const auto& [name, member] : fields) {
    out.emplace_back("tol." + name, format_double(tol.*member));
  }
  return out;
}

}  // namespace tfd
