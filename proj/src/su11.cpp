#include "tfd/su11.hpp"

#include <cmath>
#include <sstream>

namespace tfd {

FactoredForm disentangle(const QuadraticExponent& q) {
  const Complex d = q.disc;
  // D coth D, tanh(D)/D and sech D are all even in D and regular at D = 0.
  Complex d_coth_d, tanh_over_d, sech;
  if (std::abs(d) < 1e-14) {
    d_coth_d = 1.0;
    tanh_over_d = 1.0;
    sech = 1.0;
  } else {
    const Complex ch = std::cosh(d);
    const Complex sh = std::sinh(d);
    d_coth_d = d * ch / sh;
    tanh_over_d = sh / (d * ch);
    sech = 1.0 / ch;
  }
  const Complex den_outer = d_coth_d - q.number_coeff;        // D coth D - f
  const Complex den_mid = 1.0 - q.number_coeff * tanh_over_d;  // (D - f tanh D)/D
  if (std::abs(den_outer) < 1e-12 || std::abs(den_mid) < 1e-12) {
    std::ostringstream os;
    os << "disentangle: pole guard violated, |D coth D - f| = "
       << std::abs(den_outer) << ", |1 - f tanh(D)/D| = " << std::abs(den_mid);
    throw std::invalid_argument(os.str());
  }
  FactoredForm out;
  out.prefactor = std::exp(-q.number_coeff / 2.0);
  out.raise_out = q.raise_coeff / den_outer;
  out.lower_out = q.lower_coeff / den_outer;
  out.log_weight = std::log(sech / den_mid);
  return out;
}

DerivedParams thermal_params(const ModelParams& p) {
  p.validate();
  DerivedParams out;
  const double kappa2 = std::norm(p.kappa);
  const double d = std::sqrt(p.omega * p.omega - 4.0 * kappa2);
  const double x = p.beta * d;
  out.omega_eff = d;
  // lambda = D / (omega sinh x + D cosh x), overflow-safe form
  out.lambda = 2.0 * d / ((p.omega + d) * std::exp(x) + (d - p.omega) * std::exp(-x));
  out.pair_coeff = -(out.lambda / d) * p.kappa * std::sinh(x);
  // Z = e^{beta omega/2} / (2 sinh(beta D/2)) = e^{beta(omega-D)/2}/(1-e^{-beta D})
  out.partition = std::exp(p.beta * (p.omega - d) / 2.0) / (1.0 - std::exp(-x));
  if (p.kappa == Complex(0)) {
    out.squeeze_theta = std::atanh(std::exp(-p.beta * p.omega / 2.0));
  }
  return out;
}

CMatrix factored_gibbs(const ModelParams& p, Eigen::Index cutoff) {
  const DerivedParams dp = thermal_params(p);
  const FockOperators ops = fock_operators(cutoff);
  const CMatrix raise_factor =
      expm_banded_series(std::conj(dp.pair_coeff) * (ops.raise * ops.raise));
  const CMatrix lower_factor =
      expm_banded_series(dp.pair_coeff * (ops.lower * ops.lower));
  CVector mid(cutoff);
  for (Eigen::Index n = 0; n < cutoff; ++n) {
    mid[n] = std::pow(dp.lambda, double(n));
  }
  const double prefactor = std::sqrt(dp.lambda * std::exp(p.beta * p.omega));
  return prefactor * raise_factor * mid.asDiagonal() * lower_factor;
}

GaussianIntegralParams::GaussianIntegralParams(Complex zeta, Complex xi,
                                               Complex eta, Complex f,
                                               Complex g)
    : abs2_coeff(zeta), z_coeff(xi), conj_coeff(eta), z2_coeff(f),
      conj2_coeff(g) {
  convergent = true;
  const Complex det = zeta * zeta - 4.0 * f * g;
  if (det == Complex(0)) {
    convergent = false;
    return;
  }
  for (const double s1 : {1.0, -1.0}) {
    for (const double s2 : {1.0, -1.0}) {
      const Complex den = zeta + s1 * f + s2 * g;
      if (den.real() >= 0.0 || (det / den).real() >= 0.0) {
        convergent = false;
        return;
      }
    }
  }
}

Complex gaussian_integral(const GaussianIntegralParams& g) {
  if (!g.convergent) {
    throw std::invalid_argument(
        "gaussian_integral: convergence predicate Re(zeta±f±g)<0, "
        "Re((zeta²-4fg)/(zeta±f±g))<0 is not satisfied");
  }
  const Complex zeta = g.abs2_coeff;
  const Complex det = zeta * zeta - 4.0 * g.z2_coeff * g.conj2_coeff;
  const Complex s = std::sqrt(g.z2_coeff * g.conj2_coeff);
  const Complex mu1 = -zeta + 2.0 * s;
  const Complex mu2 = -zeta - 2.0 * s;
  const Complex amplitude = 1.0 / (std::sqrt(mu1) * std::sqrt(mu2));
  const Complex num = -zeta * g.z_coeff * g.conj_coeff +
                      g.z_coeff * g.z_coeff * g.conj2_coeff +
                      g.conj_coeff * g.conj_coeff * g.z2_coeff;
  return amplitude * std::exp(num / det);
}

double partition_function(const ModelParams& p) {
  return thermal_params(p).partition;
}

double log_partition_function(const ModelParams& p) {
  p.validate();
  const double d = std::sqrt(p.omega * p.omega - 4.0 * std::norm(p.kappa));
  return p.beta * (p.omega - d) / 2.0 - std::log1p(-std::exp(-p.beta * d));
}

double partition_function_coherent_trace(const ModelParams& p) {
  const DerivedParams dp = thermal_params(p);
  const GaussianIntegralParams gp(dp.lambda - 1.0, 0.0, 0.0, dp.pair_coeff,
                                  std::conj(dp.pair_coeff));
  const Complex integral = gaussian_integral(gp);
  const double prefactor = std::sqrt(dp.lambda * std::exp(p.beta * p.omega));
  return (prefactor * integral).real();
}

}  // namespace tfd
