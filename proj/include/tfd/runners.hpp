#pragma once

#include <string>
#include <vector>

#include "tfd/config.hpp"
#include "tfd/phase_space.hpp"
#include "tfd/thermo.hpp"

namespace tfd {

struct ThermalRow {
  double beta = 0.0;
  bool ok = false;
  std::string error;  // stability violations become explicit error rows
  double omega_eff = 0, lambda = 0;
  Complex pair_coeff = 0;
  double partition = 0, internal_energy = 0, entropy = 0;
  double term_number = 0, term_raise = 0, term_lower = 0;
  double sum_rule_residual = 0;
};

std::vector<ThermalRow> run_thermal(const RunConfig& cfg);
std::string thermal_csv(const RunConfig& cfg, const std::vector<ThermalRow>& rows);
std::string thermal_json(const RunConfig& cfg, const std::vector<ThermalRow>& rows);

struct PhaseSpaceResult {
  ModelParams params;
  int cutoff = 0;
  bool converged = true;
  WignerGrid grid;
  std::vector<TomogramFrameAudit> audits;
  std::vector<std::string> errors;
};

/// Wigner grid and per-frame tomogram profiles at the first configured beta.
PhaseSpaceResult run_phase_space(const RunConfig& cfg);
std::string phase_space_wigner_csv(const RunConfig& cfg, const PhaseSpaceResult& r);
std::string phase_space_tomogram_csv(const RunConfig& cfg, const PhaseSpaceResult& r);
std::string phase_space_json(const RunConfig& cfg, const PhaseSpaceResult& r);

struct StateResult {
  ModelParams params;
  int cutoff = 0;
  bool converged = true;
  std::string route;
  DoubledState state;
  DensityOperator rho;
};

StateResult run_state(const RunConfig& cfg);
std::string state_csv(const RunConfig& cfg, const StateResult& r);
std::string state_json(const RunConfig& cfg, const StateResult& r);

/// Writes to cfg.out_path (or returns false to mean stdout); creates files
/// atomically enough for CI use (truncate + write).
void write_output(const RunConfig& cfg, const std::string& payload,
                  const std::string& suffix = "");

}  // namespace tfd
