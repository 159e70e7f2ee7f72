#pragma once

#include <string>
#include <vector>

#include "tfd/fock.hpp"
#include "tfd/su11.hpp"

namespace tfd {

// alpha = (q + i p)/sqrt(2)
struct PhasePoint {
  Complex alpha;

  static PhasePoint from_qp(double q, double p) {
    return {Complex(q, p) / std::sqrt(2.0)};
  }
  double q() const { return std::sqrt(2.0) * alpha.real(); }
  double p() const { return std::sqrt(2.0) * alpha.imag(); }
};

// Homodyne frame of the quadrature f q̂ + g p̂, with
// A = f - i g = sqrt(f²+g²) e^{-i phi}.
struct QuadratureFrame {
  double f = 1.0;
  double g = 0.0;

  void validate() const;
  double norm2() const { return f * f + g * g; }
  Complex a_coeff() const { return Complex(f, -g); }
  double phi() const { return -std::arg(a_coeff()); }
  Complex exp_2iphi() const;
  /// G = 1 + 2 e^{i 2 phi} E for the printed tomogram formula.
  Complex g_factor(Complex pair_coeff) const;
};

// Uniform phase-space grid of Wigner values; row i is q = qmin + i dq,
// column j is p = pmin + j dp. The convention tag pins the normalization
// ∫ W dq dp = 1 with W_vacuum(0) = 1/pi.
struct WignerGrid {
  double qmin = -6.0, qmax = 6.0;
  double pmin = -6.0, pmax = 6.0;
  double dq = 0.02, dp = 0.02;
  Eigen::MatrixXd values;
  std::string convention = "alpha=(q+ip)/sqrt2; int W dq dp = 1";

  Eigen::Index nq() const { return values.rows(); }
  Eigen::Index np() const { return values.cols(); }
  double q_at(Eigen::Index i) const { return qmin + dq * double(i); }
  double p_at(Eigen::Index j) const { return pmin + dp * double(j); }
  double integral() const;
  double edge_max() const;
};

struct GridSpec {
  double qmin = -6.0, qmax = 6.0;
  double step = 0.02;
  bool auto_extent = true;  // widen to 8 sigma of the closed form
};

/// Closed-form Wigner function, Eq-level:
/// W(alpha) = tanh(beta D/2)/pi ·
///            exp{-(2/D)[omega |alpha|² + 2 Re(kappa alpha²)] tanh(beta D/2)}.
double wigner_closed(const ModelParams& p, const PhasePoint& pt);

WignerGrid wigner_closed_grid(const ModelParams& p, const GridSpec& spec);

/// Standard deviations of the closed-form Gaussian along its principal axes.
std::pair<double, double> wigner_principal_sigmas(const ModelParams& p);

/// Displaced-parity route: W = tr[rho D(alpha) Π D†(alpha)]/pi with D(alpha)
/// the dense exponential of alpha a† - alpha* a. Rejects points whose
/// displaced state leaks past the cutoff (tail-mass witness).
double wigner_numeric(const DensityOperator& rho, const PhasePoint& pt,
                      const ToleranceProfile& tol = default_tolerances());

/// Fock coefficients of the quadrature eigenstate
/// C exp[(sqrt2/A) q a† - (e^{i2phi}/2) a†²] |0>, computed by the stable
/// three-term recurrence.
CVector quadrature_state(const QuadratureFrame& frame, double q,
                         Eigen::Index cutoff);

/// <q|rho|q> in the given frame.
double tomogram_fock(const DensityOperator& rho, const QuadratureFrame& frame,
                     double q);

/// Line integral ∫ delta(q - f q' - g p') W dq' dp' over the stored grid:
/// composite Simpson along the exact line, bicubic grid interpolation.
/// Requires the grid to cover the support (edge check).
double radon_numeric(const WignerGrid& grid, const QuadratureFrame& frame,
                     double q,
                     const ToleranceProfile& tol = default_tolerances());

/// The printed closed-form tomogram evaluated verbatim (audit route; known
/// to disagree with the Fock/Radon routes, see tomogram_audit).
double tomogram_printed(const ModelParams& p, const QuadratureFrame& frame,
                        double q);

struct TomogramAuditRow {
  double q = 0;
  double fock = 0, radon = 0, printed = 0;
  double fock_radon_abs = 0;
  double printed_fock_abs = 0;
  double printed_fock_rel = 0;
};

// Structured three-route comparison for one frame: the Fock projection and
// the numerical Radon transform are the cross-checked pair; the printed
// closed form is reported against them, never trusted as an oracle.
struct TomogramFrameAudit {
  double frame_f = 0, frame_g = 0;
  std::vector<TomogramAuditRow> rows;
  double fock_norm = 0;
  double radon_norm = 0;
  double printed_norm = 0;
  double max_fock_radon_abs = 0;
  double max_printed_fock_abs = 0;
};

/// Runs the comparison on the given q values plus a normalization sweep.
TomogramFrameAudit tomogram_frame_audit(
    const ModelParams& p, const DensityOperator& rho, const WignerGrid& grid,
    const QuadratureFrame& frame, const std::vector<double>& qs,
    const ToleranceProfile& tol = default_tolerances());

}  // namespace tfd
