#pragma once

namespace tfd {

// Global tolerance profile. Every numerical contract in the library and the
// verification suite references one of these named defaults; tests and the
// CLI may override individual fields.
struct ToleranceProfile {
  // linalg contracts
  double hermiticity = 1e-12;         // scaled by (1 + maxabs)
  double eig_reconstruction = 1e-10;  // scaled by (1 + frobenius)
  double spectral_sum_rel = 1e-12;
  double trace_preserve_rel = 1e-12;
  double series_match = 1e-12;

  // state / density-operator contracts
  double unit_trace = 1e-10;
  double psd_floor = -1e-10;
  double state_norm = 1e-10;
  double truncation_target = 1e-10;

  // operator-algebra checks
  double reassembly_maxabs = 1e-9;
  double branch_match = 1e-12;
  double param_identity_rel = 1e-12;
  double gauss_quadrature_abs = 1e-6;
  double z_match_rel = 1e-8;

  // thermodynamics / purification checks
  double trace_norm_identity = 1e-7;
  double thermo_match_rel = 1e-8;
  double sum_rule_rel = 1e-10;
  double log_z_derivative_rel = 1e-6;
  double entropy_invariance = 1e-9;
  double offdiag_block_abs = 1e-6;
  double degeneration_exact = 1e-12;
  double degeneration_limit = 1e-10;

  // phase space
  double wigner_abs = 1e-6;
  double wigner_norm_abs = 1e-3;
  double wigner_support_tail = 1e-7;
  double tomogram_abs = 1e-4;
  double profile_norm_abs = 1e-4;
  double radon_edge_support = 1e-10;
};

inline const ToleranceProfile& default_tolerances() {
  static const ToleranceProfile profile{};
  return profile;
}

}  // namespace tfd
