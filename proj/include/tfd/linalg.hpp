#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "tfd/tolerances.hpp"

namespace tfd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Raised when an iterative or truncated computation fails to reach its
/// target; carries the best residual achieved so the caller can report it.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), best_residual_(residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

struct HermitianEig {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary, columns
};

/// max_{i,j} |M[i,j] - conj(M[j,i])|
double hermiticity_defect(const CMatrix& m);

bool is_hermitian(const CMatrix& m,
                  const ToleranceProfile& tol = default_tolerances());

/// Eigendecomposition of a Hermitian matrix; rejects non-Hermitian input
/// with the measured asymmetry in the message.
HermitianEig eig_hermitian(const CMatrix& m,
                           const ToleranceProfile& tol = default_tolerances());

/// e^{s M} for Hermitian M via eigendecomposition.
CMatrix expm_hermitian(const CMatrix& m, double s,
                       const ToleranceProfile& tol = default_tolerances());

/// e^{G} for anti-Hermitian G (a unitary), via the eigensystem of -iG.
CMatrix expm_antihermitian(const CMatrix& g,
                           const ToleranceProfile& tol = default_tolerances());

/// Finite power series sum_k M^k / k! for nilpotent M (a matrix that
/// strictly raises or lowers the Fock index by a fixed step terminates
/// within dim steps). Rejects input whose series does not terminate.
CMatrix expm_banded_series(const CMatrix& m);

/// General dense matrix exponential by scaled Taylor series with repeated
/// squaring. Reference route only: independent of both expm_hermitian and
/// expm_banded_series, used as the oracle side of dual-route checks.
CMatrix expm_taylor_scaled(const CMatrix& m);

/// Kronecker product with the first factor on the slow (outer) index:
/// (A (x) B)[(iA*dB+iB),(jA*dB+jB)] = A[iA,jA] * B[iB,jB].
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);

/// Partial trace over the fast (second) factor of a (dA*dB)x(dA*dB) matrix.
CMatrix partial_trace_second(const CMatrix& m, Eigen::Index dim_a,
                             Eigen::Index dim_b);

enum class MatrixNorm { Trace, Frobenius, MaxAbs };

double matrix_distance(const CMatrix& a, const CMatrix& b, MatrixNorm norm);

}  // namespace tfd
