#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "tfd/fock.hpp"
#include "tfd/linalg.hpp"
#include "tfd/su11.hpp"

using namespace tfd;
using doctest::Approx;

namespace {

CMatrix random_matrix(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix m = random_matrix(n, rng);
  return 0.5 * (m + m.adjoint());
}

// plain unscaled Taylor sum, the independent series oracle for nilpotents
CMatrix dense_series_exp(const CMatrix& m, int terms) {
  CMatrix sum = CMatrix::Identity(m.rows(), m.cols());
  CMatrix p = sum;
  for (int k = 1; k <= terms; ++k) {
    p = m * p / double(k);
    sum += p;
  }
  return sum;
}

}  // namespace

TEST_CASE("expm_hermitian: exp of zero is identity") {
  const CMatrix z = CMatrix::Zero(2, 2);
  const CMatrix e = expm_hermitian(z, 1.0);
  CHECK(matrix_distance(e, CMatrix::Identity(2, 2), MatrixNorm::MaxAbs) < 1e-15);
}

TEST_CASE("expm_hermitian: diagonal case") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 1) = 1.0;
  const CMatrix e = expm_hermitian(m, -1.0);
  CHECK(e(0, 0).real() == Approx(1.0).epsilon(1e-15));
  CHECK(e(1, 1).real() == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("expm_hermitian: Gibbs trace matches the closed-form partition") {
  // derived anchor: Z = e^{beta omega/2} / (2 sinh(beta D/2)) = 1.8455624...
  const ModelParams p{1.0, 0.25, 1.0};
  const CMatrix h = build_hamiltonian(p, 60);
  const CMatrix rho = expm_hermitian(h, -1.0);
  CHECK(rho.trace().real() == Approx(1.8455624016525238).epsilon(1e-10));
}

TEST_CASE("expm_hermitian rejects non-Hermitian input with diagnostic") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(expm_hermitian(m, 1.0),
                       doctest::Contains("max asymmetry"),
                       std::invalid_argument);
}

TEST_CASE("eig_hermitian reconstruction and unitarity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix m = random_hermitian(24, rng);
    const HermitianEig eig = eig_hermitian(m);
    CMatrix rebuilt = eig.eigenvectors;
    for (Eigen::Index c = 0; c < 24; ++c) rebuilt.col(c) *= eig.eigenvalues[c];
    rebuilt = rebuilt * eig.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() <= 1e-10 * (1.0 + m.norm()));
    const CMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - CMatrix::Identity(24, 24)).norm() <= 1e-10);
    for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) {
      CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("trace of expm equals spectral sum") {
  std::mt19937_64 rng(7);
  const CMatrix m = random_hermitian(16, rng);
  const double beta = 0.7;
  const CMatrix e = expm_hermitian(m, -beta);
  const HermitianEig eig = eig_hermitian(m);
  double spectral = 0.0;
  for (Eigen::Index i = 0; i < 16; ++i) {
    spectral += std::exp(-beta * eig.eigenvalues[i]);
  }
  CHECK(e.trace().real() == Approx(spectral).epsilon(1e-12));
}

TEST_CASE("expm_banded_series: zero matrix") {
  const CMatrix e = expm_banded_series(CMatrix::Zero(5, 5));
  CHECK(matrix_distance(e, CMatrix::Identity(5, 5), MatrixNorm::MaxAbs) == 0.0);
}

TEST_CASE("expm_banded_series: lowering-squared at N=4 terminates exactly") {
  const FockOperators ops = fock_operators(4);
  const CMatrix m = ops.lower * ops.lower;
  const CMatrix e = expm_banded_series(m);
  const CMatrix expect = CMatrix::Identity(4, 4) + m + 0.5 * m * m;
  CHECK(matrix_distance(e, expect, MatrixNorm::MaxAbs) < 1e-15);
  CHECK((m * m).cwiseAbs().maxCoeff() == 0.0);  // a^4 vanishes at this cutoff
}

TEST_CASE("expm_banded_series matches the dense series on random nilpotents") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Eigen::Index step : {1, 2, 3}) {
    CMatrix m = CMatrix::Zero(8, 8);
    for (Eigen::Index i = 0; i + step < 8; ++i) {
      m(i, i + step) = Complex(u(rng), u(rng));
    }
    const CMatrix fast = expm_banded_series(m);
    const CMatrix slow = dense_series_exp(m, 10);
    CHECK(matrix_distance(fast, slow, MatrixNorm::MaxAbs) <= 1e-12);
    const CMatrix fast_t = expm_banded_series(CMatrix(m.transpose()));
    const CMatrix slow_t = dense_series_exp(m.transpose(), 10);
    CHECK(matrix_distance(fast_t, slow_t, MatrixNorm::MaxAbs) <= 1e-12);
  }
}

TEST_CASE("expm_banded_series rejects non-nilpotent input") {
  const FockOperators ops = fock_operators(6);
  const CMatrix mixed = ops.lower + ops.raise;
  CHECK_THROWS_AS(expm_banded_series(mixed), std::invalid_argument);
  CHECK_THROWS_AS(expm_banded_series(ops.number + CMatrix::Identity(6, 6)),
                  std::invalid_argument);
}

TEST_CASE("banded factors reassemble the Gibbs operator") {
  const ModelParams p{1.0, 0.25, 1.0};
  const CMatrix viafactors = factored_gibbs(p, 60);
  const CMatrix h = build_hamiltonian(p, 60);
  const CMatrix viaexpm = expm_hermitian(h, -p.beta);
  CHECK(matrix_distance(viafactors, viaexpm, MatrixNorm::MaxAbs) <= 1e-8);
}

TEST_CASE("tensor then partial trace round trip") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix a = random_matrix(3, rng);
    const CMatrix b = random_matrix(4, rng);
    const CMatrix t = tensor_product(a, b);
    CHECK(t.rows() == 12);
    const CMatrix back = partial_trace_second(t, 3, 4);
    const CMatrix expect = a * b.trace();
    CHECK(matrix_distance(back, expect, MatrixNorm::MaxAbs) < 1e-13);
  }
}

TEST_CASE("tensor index convention: system is the slow index") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 0) = 1.0;
  CMatrix b = CMatrix::Zero(3, 3);
  b(2, 1) = 1.0;
  const CMatrix t = tensor_product(a, b);
  CHECK(t(1 * 3 + 2, 0 * 3 + 1) == Complex(1.0));
}

TEST_CASE("partial trace of a maximally entangled projector is I/2") {
  CVector v = CVector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  const CMatrix proj = v * v.adjoint();
  const CMatrix red = partial_trace_second(proj, 2, 2);
  CHECK(matrix_distance(red, 0.5 * CMatrix::Identity(2, 2), MatrixNorm::MaxAbs) <
        1e-15);
}

TEST_CASE("partial trace preserves trace") {
  std::mt19937_64 rng(99);
  const CMatrix m = random_matrix(12, rng);
  const CMatrix red = partial_trace_second(m, 3, 4);
  CHECK(std::abs(red.trace() - m.trace()) <= 1e-12 * (1.0 + std::abs(m.trace())));
}

TEST_CASE("partial trace rejects inconsistent dimensions") {
  CHECK_THROWS_AS(partial_trace_second(CMatrix::Zero(5, 5), 2, 2),
                  std::invalid_argument);
}

TEST_CASE("matrix_distance basics") {
  const CMatrix a = CMatrix::Identity(3, 3);
  CHECK(matrix_distance(a, a, MatrixNorm::Trace) == Approx(0.0));
  CHECK(matrix_distance(a, a, MatrixNorm::Frobenius) == Approx(0.0));
  CHECK(matrix_distance(a, a, MatrixNorm::MaxAbs) == Approx(0.0));

  CMatrix d1 = CMatrix::Zero(2, 2), d2 = CMatrix::Zero(2, 2);
  d1(0, 0) = 1.0;
  d2(1, 1) = 1.0;
  CHECK(matrix_distance(d1, d2, MatrixNorm::Trace) == Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(matrix_distance(d1, CMatrix::Zero(3, 3), MatrixNorm::Trace),
                  std::invalid_argument);
}

TEST_CASE("trace norm agrees between eigenvalue and SVD paths") {
  std::mt19937_64 rng(5);
  const CMatrix h = random_hermitian(10, rng);
  const CMatrix g = random_matrix(10, rng);
  const CMatrix zero = CMatrix::Zero(10, 10);
  Eigen::JacobiSVD<CMatrix> svd(h);
  CHECK(matrix_distance(h, zero, MatrixNorm::Trace) ==
        Approx(svd.singularValues().sum()).epsilon(1e-12));
  Eigen::JacobiSVD<CMatrix> svd2(g);
  CHECK(matrix_distance(g, zero, MatrixNorm::Trace) ==
        Approx(svd2.singularValues().sum()).epsilon(1e-12));
}

TEST_CASE("expm_antihermitian produces a unitary displacement") {
  const FockOperators ops = fock_operators(40);
  const Complex alpha(0.6, -0.3);
  const CMatrix gen = alpha * ops.raise - std::conj(alpha) * ops.lower;
  const CMatrix u = expm_antihermitian(gen);
  CHECK((u * u.adjoint() - CMatrix::Identity(40, 40)).cwiseAbs().maxCoeff() <
        1e-12);
  // displaced vacuum is a coherent state: vacuum weight e^{-|alpha|^2}
  const CVector col = u.col(0);
  CHECK(std::norm(col[0]) == Approx(std::exp(-std::norm(alpha))).epsilon(1e-10));
}

TEST_CASE("expm_taylor_scaled agrees with the eigendecomposition route") {
  std::mt19937_64 rng(17);
  const CMatrix m = random_hermitian(20, rng);
  const CMatrix a = expm_taylor_scaled(m);
  const CMatrix b = expm_hermitian(m, 1.0);
  CHECK(matrix_distance(a, b, MatrixNorm::MaxAbs) < 1e-11);
}
