#pragma once

#include <optional>

#include "tfd/fock.hpp"
#include "tfd/linalg.hpp"

namespace tfd {

// Exponent f a†a + g a†² + k a² of the SU(1,1) disentangling identity,
// with disc = principal sqrt(f² - 4 k g). Every occurrence of disc in the
// factored form is even, so the sign branch is immaterial.
struct QuadraticExponent {
  Complex number_coeff;  // f
  Complex raise_coeff;   // g
  Complex lower_coeff;   // k
  Complex disc;

  QuadraticExponent(Complex f, Complex g, Complex k)
      : number_coeff(f), raise_coeff(g), lower_coeff(k),
        disc(std::sqrt(f * f - 4.0 * k * g)) {}
};

// exp[f a†a + g a†² + k a²] =
//   prefactor · e^{raise_out a†²} · e^{(a†a + 1/2) log_weight} · e^{lower_out a²}
struct FactoredForm {
  Complex prefactor;
  Complex raise_out;
  Complex log_weight;
  Complex lower_out;
};

FactoredForm disentangle(const QuadraticExponent& q);

// Closed-form map of the Gibbs exponent: effective frequency
// D = sqrt(omega² - 4|kappa|²), diagonal weight lambda, pair coefficient E
// (the a² factor), partition Z, and the free-field squeeze angle theta
// (tanh theta = e^{-beta omega / 2}, kappa = 0 only).
struct DerivedParams {
  double omega_eff = 0.0;
  double lambda = 0.0;
  Complex pair_coeff = 0.0;
  double partition = 0.0;
  std::optional<double> squeeze_theta;
};

DerivedParams thermal_params(const ModelParams& p);

/// Assembles e^{-beta H} from the factored form of the disentangling
/// identity: sqrt(lambda e^{beta omega}) e^{E* a†²} lambda^{a†a} e^{E a²}.
CMatrix factored_gibbs(const ModelParams& p, Eigen::Index cutoff);

// Parameters of the complex Gaussian integral
// ∫ d²z/π exp(zeta |z|² + xi z + eta z* + f z² + g z*²)
// with the convergence predicate (all four sign choices) evaluated on
// construction.
struct GaussianIntegralParams {
  Complex abs2_coeff;   // zeta
  Complex z_coeff;      // xi
  Complex conj_coeff;   // eta
  Complex z2_coeff;     // f
  Complex conj2_coeff;  // g
  bool convergent = false;

  GaussianIntegralParams(Complex zeta, Complex xi, Complex eta, Complex f,
                         Complex g);
};

/// Closed form of the Gaussian integral. The amplitude is taken as
/// 1/(sqrt(mu1) sqrt(mu2)) with mu_{1,2} = -zeta ± 2 sqrt(f g), the
/// eigenvalues of the quadratic form; on the convergent domain both have
/// positive real part, so principal roots continue the real reference
/// point (zeta < 0, f = g = 0) without crossing a cut.
Complex gaussian_integral(const GaussianIntegralParams& g);

/// Z = e^{beta omega/2} / (2 sinh(beta D / 2)).
double partition_function(const ModelParams& p);

/// Z via the coherent-state trace of the factored Gibbs operator,
/// evaluated with gaussian_integral. Independent cross-check route.
double partition_function_coherent_trace(const ModelParams& p);

double log_partition_function(const ModelParams& p);

}  // namespace tfd
