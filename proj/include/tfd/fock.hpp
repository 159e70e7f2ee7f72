#pragma once

#include <complex>

#include "tfd/linalg.hpp"

namespace tfd {

// Hamiltonian / temperature inputs of H = omega a†a + kappa* a†² + kappa a²
// at inverse temperature beta (hbar = k_B = 1).
struct ModelParams {
  double omega = 1.0;
  Complex kappa = 0.0;
  double beta = 1.0;

  double kappa_abs() const { return std::abs(kappa); }
  double kappa_arg() const { return kappa == Complex(0) ? 0.0 : std::arg(kappa); }

  // omega > 0, beta > 0 and omega - 2|kappa| > eps_stab; below the stability
  // gate the spectrum is unbounded and e^{-beta H} has no trace.
  void validate() const;
  bool stable() const;
};

struct TruncationPolicy {
  int initial_cutoff = 16;
  double growth = 1.5;
  double target_tolerance = 1e-10;
  int max_cutoff = 512;

  void validate() const;
};

// Amplitudes C[m,n] of a two-mode pure state sum_{m,n} C[m,n] |m> (x) |ñ>
// on the truncated doubled Fock space. States are stored normalized; the
// tail mass (population on the last row/column) witnesses truncation
// convergence and renorm_deviation records |norm - 1| before the
// normalize step.
struct DoubledState {
  CMatrix amplitudes;
  double tail_mass = 0.0;
  double renorm_deviation = 0.0;

  Eigen::Index cutoff() const { return amplitudes.rows(); }
  double norm() const { return amplitudes.norm(); }
};

struct DensityOperator {
  CMatrix matrix;          // Hermitian, unit trace
  double raw_trace = 1.0;  // trace before normalization (Z_numeric for Gibbs)

  Eigen::Index cutoff() const { return matrix.rows(); }
};

struct FockOperators {
  CMatrix lower;   // a
  CMatrix raise;   // a†
  CMatrix number;  // a†a
};

/// Truncated ladder operators at cutoff N: a[m-1,m] = sqrt(m).
FockOperators fock_operators(Eigen::Index cutoff);

CMatrix build_hamiltonian(const ModelParams& p, Eigen::Index cutoff);

/// e^{-beta H}/tr e^{-beta H}; raw_trace records the unnormalized trace.
DensityOperator gibbs_density(const ModelParams& p, Eigen::Index cutoff,
                              const ToleranceProfile& tol = default_tolerances());

/// rho = C C†, the partial trace of |s><s| over the tilde mode.
DensityOperator reduced_density(const DoubledState& s);

/// -sum lambda_i ln lambda_i over the spectrum, in units of k_B.
double von_neumann_entropy(const DensityOperator& rho,
                           const ToleranceProfile& tol = default_tolerances());

/// Smallest cutoff in the policy's growth sequence whose Gibbs tail
/// population and forward Z increment both meet the target tolerance.
/// Throws NonConvergenceError at the max cutoff.
int choose_cutoff(const ModelParams& p, const TruncationPolicy& policy);

}  // namespace tfd
