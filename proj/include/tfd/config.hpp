#pragma once

#include <map>
#include <string>
#include <vector>

#include "tfd/fock.hpp"
#include "tfd/phase_space.hpp"
#include "tfd/tolerances.hpp"

namespace tfd {

/// Raised for malformed config files, flags or sweep specs (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Resolved run configuration: config-file values overridden by command-line
// flags; every field has a documented default.
struct RunConfig {
  double omega = 1.0;
  double kappa_abs = 0.0;
  double kappa_arg = 0.0;
  std::vector<double> betas = {1.0};  // single value or strictly increasing sweep

  int cutoff = 0;  // 0 = choose automatically via the truncation policy
  TruncationPolicy policy{};

  GridSpec grid{};
  std::vector<QuadratureFrame> frames = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  std::vector<double> tomogram_qs;  // empty = 21 points over [-5, 5]

  std::string state_route = "eq28";  // eq28 | spectral | a9 | a10 | free
  std::string format = "csv";        // csv | json
  std::string out_path;              // empty = stdout
  int threads = 1;

  ToleranceProfile tol{};

  ModelParams model(double beta) const;
  std::vector<double> tomogram_points() const;
  void validate() const;

  /// Flat key=value lines, '#' comments. Returns the raw pairs.
  static std::map<std::string, std::string> read_key_values(
      const std::string& path);

  /// Applies recognized keys (including tol.<name>) onto this config.
  void apply_key_values(const std::map<std::string, std::string>& kv);

  /// Deterministic flat listing of every resolved field, for provenance
  /// blocks in output files.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

std::vector<double> parse_sweep(const std::string& spec);      // start:stop:count
GridSpec parse_grid(const std::string& spec);                  // qmin:qmax:step
QuadratureFrame parse_frame(const std::string& spec);          // f,g

/// Round-trip precision formatting shared by CSV and provenance output.
std::string format_double(double v);

}  // namespace tfd
