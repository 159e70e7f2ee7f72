#include "tfd/fock.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace tfd {

namespace {
constexpr double kStabilityEps = 1e-9;  // relative to omega
}

bool ModelParams::stable() const {
  return omega - 2.0 * kappa_abs() > kStabilityEps * omega;
}

void ModelParams::validate() const {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("ModelParams: omega must be positive");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("ModelParams: beta must be positive");
  }
  if (!stable()) {
    std::ostringstream os;
    os << "ModelParams: stability gate omega - 2|kappa| > " << kStabilityEps
       << "*omega violated (omega=" << omega << ", |kappa|=" << kappa_abs()
       << "); the spectrum is unbounded below";
    throw std::invalid_argument(os.str());
  }
}

void TruncationPolicy::validate() const {
  if (initial_cutoff < 8) {
    throw std::invalid_argument("TruncationPolicy: initial cutoff must be >= 8");
  }
  if (!(growth > 1.0)) {
    throw std::invalid_argument("TruncationPolicy: growth factor must exceed 1");
  }
  if (!(target_tolerance > 0.0)) {
    throw std::invalid_argument("TruncationPolicy: tolerance must be positive");
  }
  if (max_cutoff < initial_cutoff) {
    throw std::invalid_argument("TruncationPolicy: max cutoff below initial");
  }
}

FockOperators fock_operators(Eigen::Index cutoff) {
  if (cutoff < 2) {
    throw std::invalid_argument("fock_operators: cutoff must be >= 2");
  }
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (Eigen::Index m = 1; m < cutoff; ++m) {
    a(m - 1, m) = std::sqrt(double(m));
  }
  CMatrix ad = a.adjoint();
  CMatrix number = CMatrix::Zero(cutoff, cutoff);
  for (Eigen::Index m = 0; m < cutoff; ++m) number(m, m) = double(m);
  return {std::move(a), std::move(ad), std::move(number)};
}

CMatrix build_hamiltonian(const ModelParams& p, Eigen::Index cutoff) {
  p.validate();
  const FockOperators ops = fock_operators(cutoff);
  CMatrix h = p.omega * ops.number;
  h += std::conj(p.kappa) * (ops.raise * ops.raise);
  h += p.kappa * (ops.lower * ops.lower);
  return h;
}

DensityOperator gibbs_density(const ModelParams& p, Eigen::Index cutoff,
                              const ToleranceProfile& tol) {
  const CMatrix h = build_hamiltonian(p, cutoff);
  CMatrix rho = expm_hermitian(h, -p.beta, tol);
  const double z_numeric = rho.trace().real();
  rho /= z_numeric;
  return {std::move(rho), z_numeric};
}

DensityOperator reduced_density(const DoubledState& s) {
  const double nrm = s.amplitudes.norm();
  if (nrm == 0.0) {
    throw std::invalid_argument("reduced_density: zero-norm state");
  }
  CMatrix rho = s.amplitudes * s.amplitudes.adjoint();
  const double tr = rho.trace().real();
  rho /= tr;
  return {std::move(rho), tr};
}

double von_neumann_entropy(const DensityOperator& rho,
                           const ToleranceProfile& tol) {
  const HermitianEig eig = eig_hermitian(rho.matrix, tol);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues[i];
    if (lam < -1e-8) {
      std::ostringstream os;
      os << "von_neumann_entropy: eigenvalue " << lam << " below -1e-8; "
         << "input is not a density operator";
      throw std::invalid_argument(os.str());
    }
    if (lam > 1e-14) s -= lam * std::log(lam);
  }
  return s;
}

int choose_cutoff(const ModelParams& p, const TruncationPolicy& policy) {
  p.validate();
  policy.validate();

  std::vector<int> seq{policy.initial_cutoff};
  while (seq.back() < policy.max_cutoff) {
    const int next = int(std::ceil(double(seq.back()) * policy.growth));
    seq.push_back(std::min(next, policy.max_cutoff));
  }

  struct Sample {
    double tail;
    double z;
  };
  std::vector<Sample> samples;
  samples.reserve(seq.size());
  for (const int n : seq) {
    const DensityOperator rho = gibbs_density(p, n);
    const double tail =
        rho.matrix(n - 2, n - 2).real() + rho.matrix(n - 1, n - 1).real();
    samples.push_back({tail, rho.raw_trace});
  }

  double best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double tail = samples[i].tail;
    const double dz =
        std::abs(samples[i + 1].z - samples[i].z) / samples[i + 1].z;
    best_residual = std::min(best_residual, std::max(tail, dz));
    if (tail <= policy.target_tolerance && dz <= policy.target_tolerance) {
      return seq[i];
    }
  }
  // last candidate has no forward witness; count its tail alone
  best_residual = std::min(best_residual, samples.back().tail);

  std::ostringstream os;
  os << "choose_cutoff: no convergence up to max cutoff " << policy.max_cutoff
     << " (best residual " << best_residual << ", target "
     << policy.target_tolerance << ")";
  throw NonConvergenceError(os.str(), best_residual);
}

}  // namespace tfd
