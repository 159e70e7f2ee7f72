#include "tfd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace tfd {

namespace {

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << who << ": need a square matrix, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, const ToleranceProfile& tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return hermiticity_defect(m) <= tol.hermiticity * scale;
}

HermitianEig eig_hermitian(const CMatrix& m, const ToleranceProfile& tol) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, tol)) {
    std::ostringstream os;
    os << "eig_hermitian: input is not Hermitian, max asymmetry "
       << hermiticity_defect(m);
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_hermitian(const CMatrix& m, double s, const ToleranceProfile& tol) {
  const HermitianEig eig = eig_hermitian(m, tol);
  const RVector w = (s * eig.eigenvalues.array()).exp();
  return eig.eigenvectors * w.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix expm_antihermitian(const CMatrix& g, const ToleranceProfile& tol) {
  require_square(g, "expm_antihermitian");
  const CMatrix h = Complex(0, -1) * g;  // Hermitian when g is anti-Hermitian
  if (!is_hermitian(h, tol)) {
    std::ostringstream os;
    os << "expm_antihermitian: generator is not anti-Hermitian, defect "
       << hermiticity_defect(h);
    throw std::invalid_argument(os.str());
  }
  const HermitianEig eig = eig_hermitian(h, tol);
  CVector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(Complex(0, eig.eigenvalues[i]));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {

// Offset of the single nonzero diagonal, 0 if none, nullopt if mixed.
std::optional<Eigen::Index> single_band_offset(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  std::optional<Eigen::Index> offset;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j) == Complex(0)) continue;
      const Eigen::Index d = j - i;
      if (!offset) {
        offset = d;
      } else if (*offset != d) {
        return std::nullopt;
      }
    }
  }
  return offset ? offset : std::optional<Eigen::Index>(0);
}

}  // namespace

CMatrix expm_banded_series(const CMatrix& m) {
  require_square(m, "expm_banded_series");
  const Eigen::Index n = m.rows();

  const auto offset = single_band_offset(m);
  if (offset && *offset != 0) {
    // single shifted diagonal: M^k lives on offset k*d with
    // (M^k)(i, i+kd) = M(i, i+d) (M^{k-1})(i+d, i+kd)
    const Eigen::Index d = *offset;
    CMatrix sum = CMatrix::Identity(n, n);
    CVector band = CVector::Zero(n);  // band[i] = M(i, i+d)
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index j = i + d;
      if (j >= 0 && j < n) band[i] = m(i, j);
    }
    CVector power = band;  // power[i] = (M^k/k!)(i, i+kd)
    for (Eigen::Index k = 1; std::abs(k * d) < n; ++k) {
      if (k > 1) {
        CVector next = CVector::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const Eigen::Index r = i + d;
          if (r >= 0 && r < n) next[i] = band[i] * power[r] / double(k);
        }
        power = std::move(next);
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = i + k * d;
        if (j >= 0 && j < n) sum(i, j) += power[i];
      }
    }
    return sum;
  }

  if (offset && *offset == 0 && m.cwiseAbs().maxCoeff() == 0.0) {
    return CMatrix::Identity(n, n);
  }

  // general fallback with the termination witness
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    power = (m * power) / double(k);
    if (power.cwiseAbs().maxCoeff() == 0.0) return sum;
    sum += power;
  }
  throw std::invalid_argument(
      "expm_banded_series: series did not terminate within dim steps "
      "(input does not strictly raise or lower by a fixed step)");
}

CMatrix expm_taylor_scaled(const CMatrix& m) {
  require_square(m, "expm_taylor_scaled");
  const Eigen::Index n = m.rows();
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = int(std::ceil(std::log2(norm1 / 0.5)));
  }
  const CMatrix scaled = m / std::pow(2.0, squarings);
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (scaled * term) / double(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  CMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix partial_trace_second(const CMatrix& m, Eigen::Index dim_a,
                             Eigen::Index dim_b) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b ||
      m.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace_second: matrix is " << m.rows() << "x" << m.cols()
       << " but dims give " << dim_a * dim_b;
    throw std::invalid_argument(os.str());
  }
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      Complex s = 0.0;
      for (Eigen::Index k = 0; k < dim_b; ++k) {
        s += m(i * dim_b + k, j * dim_b + k);
      }
      out(i, j) = s;
    }
  }
  return out;
}

double matrix_distance(const CMatrix& a, const CMatrix& b, MatrixNorm norm) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix_distance: shape mismatch");
  }
  const CMatrix diff = a - b;
  switch (norm) {
    case MatrixNorm::Frobenius:
      return diff.norm();
    case MatrixNorm::MaxAbs:
      return diff.cwiseAbs().maxCoeff();
    case MatrixNorm::Trace: {
      if (diff.rows() == diff.cols() && is_hermitian(diff)) {
        // trace norm of a Hermitian matrix = sum |eigenvalues|
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff);
        return solver.eigenvalues().cwiseAbs().sum();
      }
      Eigen::JacobiSVD<CMatrix> svd(diff);
      return svd.singularValues().sum();
    }
  }
  throw std::logic_error("matrix_distance: unknown norm");
}

}  // namespace tfd
