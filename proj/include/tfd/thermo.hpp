#pragma once

#include "tfd/fock.hpp"
#include "tfd/su11.hpp"

namespace tfd {

// Squeeze parameters diagonalizing the quadratic Hamiltonian:
// mu² - nu² = 1, |kappa|(mu² + nu²) = omega mu nu, omega_eff = D.
struct BogoliubovParams {
  double mu = 1.0;
  double nu = 0.0;
  double omega_eff = 0.0;
  double phase = 0.0;  // arg kappa
};

struct ThermoObservables {
  double partition = 0.0;
  double internal_energy = 0.0;
  double entropy = 0.0;     // k_B units
  double term_number = 0.0; // <omega a†a>
  double term_raise = 0.0;  // <kappa* a†²>
  double term_lower = 0.0;  // <kappa a²>
};

struct DiagonalizationReport {
  double offdiag_maxabs = 0.0;
  double const_shift_err = 0.0;
  double unitarity_defect = 0.0;
  Eigen::Index block = 0;
  Eigen::Index working_dim = 0;
};

enum class AppendixRoute { UnitaryA9, ClosedFormA10 };

/// Free-field thermo vacuum: C[n,n] = sqrt(1 - e^{-beta omega}) e^{-n beta omega/2}.
/// Requires kappa = 0 (otherwise use generalized_thermo_state).
DoubledState thermo_vacuum_free(const ModelParams& p, Eigen::Index cutoff);

/// Purification of e^{-beta H}/Z from the normalized closed form
/// sqrt(2 lambda^{1/2} sinh(beta D/2)) e^{E* a†² + sqrt(lambda) a†ã†} |0 0̃>,
/// amplitudes accumulated in the log domain.
DoubledState generalized_thermo_state(const ModelParams& p, Eigen::Index cutoff,
                                      const ToleranceProfile& tol = default_tolerances());

/// Spectral purification Z^{-1/2} sum_n e^{-beta E_n/2} |n,ñ> built from the
/// truncated eigensystem; the tilde label carries the eigenindex.
DoubledState spectral_thermo_state(const ModelParams& p, Eigen::Index cutoff,
                                   const ToleranceProfile& tol = default_tolerances());

BogoliubovParams bogoliubov(const ModelParams& p);

/// Single-mode squeeze in its factored form
/// e^{(nu/mu) a†²/2} e^{(a†a+1/2) ln(1/mu)} e^{-(nu/mu) a²/2};
/// matrix elements are exact at truncation.
CMatrix squeeze_operator(const BogoliubovParams& b, Eigen::Index dim);

/// R = e^{i phase a†a / 2}.
CMatrix rotation_operator(double phase, Eigen::Index dim);

/// Conjugates H by S R and reports the deviation from
/// omega_eff (a†a + 1/2) - omega/2 on the lower cutoff/2 block. Matrices are
/// built at working dimension 2*cutoff so the reported block is converged
/// rather than truncation-polluted.
DiagonalizationReport diagonalization_check(const ModelParams& p,
                                            Eigen::Index cutoff);

/// The appendix construction, either as R†S† applied to the free thermo
/// vacuum at frequency omega_eff (route A9) or as the direct three-generator
/// exponential series (route A10).
DoubledState appendix_state(const ModelParams& p, Eigen::Index cutoff,
                            AppendixRoute route,
                            const ToleranceProfile& tol = default_tolerances());

/// Closed forms: <H> = (D coth(beta D/2) - omega)/2,
/// S = (beta D/2) coth(beta D/2) - ln[2 sinh(beta D/2)],
/// term_number = (omega/2)((omega/D) coth(beta D/2) - 1),
/// term_raise = term_lower = -(|kappa|²/D) coth(beta D/2).
ThermoObservables thermo_observables(const ModelParams& p);

}  // namespace tfd
