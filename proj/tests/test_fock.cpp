#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfd/fock.hpp"
#include "tfd/su11.hpp"
#include "tfd/thermo.hpp"

using namespace tfd;
using doctest::Approx;

TEST_CASE("fock_operators: N=2 ladder") {
  const FockOperators ops = fock_operators(2);
  CHECK(ops.lower(0, 1) == Complex(1.0));
  CHECK(ops.lower(0, 0) == Complex(0.0));
  CHECK(ops.lower(1, 0) == Complex(0.0));
  CHECK(ops.lower(1, 1) == Complex(0.0));
  CHECK_THROWS_AS(fock_operators(1), std::invalid_argument);
}

TEST_CASE("fock_operators: commutator has the known corner artifact") {
  const Eigen::Index n = 12;
  const FockOperators ops = fock_operators(n);
  const CMatrix comm = ops.lower * ops.raise - ops.raise * ops.lower;
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    CHECK(comm(i, i).real() == Approx(1.0).epsilon(1e-14));
  }
  CHECK(comm(n - 1, n - 1).real() == Approx(1.0 - double(n)).epsilon(1e-14));
}

TEST_CASE("fock_operators: number operator eigenvalues") {
  const FockOperators ops = fock_operators(8);
  const CMatrix nn = ops.raise * ops.lower;
  for (Eigen::Index k = 0; k < 8; ++k) {
    CHECK(nn(k, k).real() == Approx(double(k)).epsilon(1e-14));
    CHECK(ops.number(k, k).real() == Approx(double(k)));
  }
}

TEST_CASE("build_hamiltonian: kappa = 0 is the diagonal ladder") {
  const ModelParams p{1.3, 0.0, 1.0};
  const CMatrix h = build_hamiltonian(p, 6);
  for (Eigen::Index k = 0; k < 6; ++k) {
    CHECK(h(k, k).real() == Approx(1.3 * double(k)).epsilon(1e-14));
  }
  CHECK(h.cwiseAbs().sum() == Approx(h.diagonal().cwiseAbs().sum()));
}

TEST_CASE("build_hamiltonian: spectrum matches the Bogoliubov closed form") {
  // oracle: E_n = omega'(n + 1/2) - omega/2 with omega' = sqrt(omega^2-4|k|^2)
  const ModelParams p{1.0, 0.25, 1.0};
  const CMatrix h = build_hamiltonian(p, 60);
  const HermitianEig eig = eig_hermitian(h);
  const double omega_eff = std::sqrt(0.75);
  CHECK(eig.eigenvalues[0] == Approx((omega_eff - 1.0) / 2.0).epsilon(1e-10));
  for (int n = 0; n < 10; ++n) {
    CHECK(eig.eigenvalues[n + 1] - eig.eigenvalues[n] ==
          Approx(omega_eff).epsilon(1e-9));
  }
}

TEST_CASE("build_hamiltonian rejects unstable parameters") {
  CHECK_THROWS_WITH_AS(build_hamiltonian(ModelParams{1.0, 0.51, 1.0}, 8),
                       doctest::Contains("stability"), std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(ModelParams{1.0, 0.5, 1.0}, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(ModelParams{-1.0, 0.0, 1.0}, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(ModelParams{1.0, 0.0, -2.0}, 8),
                  std::invalid_argument);
}

TEST_CASE("gibbs_density: geometric thermal state at beta*omega = ln 2") {
  const ModelParams p{1.0, 0.0, std::log(2.0)};
  const DensityOperator rho = gibbs_density(p, 40);
  CHECK(rho.matrix.trace().real() == Approx(1.0).epsilon(1e-12));
  for (int n = 0; n < 10; ++n) {
    CHECK(rho.matrix(n + 1, n + 1).real() / rho.matrix(n, n).real() ==
          Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("gibbs_density: large beta projects onto the ground state") {
  const ModelParams p{1.0, 0.0, 40.0};
  const DensityOperator rho = gibbs_density(p, 16);
  CMatrix ground = CMatrix::Zero(16, 16);
  ground(0, 0) = 1.0;
  CHECK(matrix_distance(rho.matrix, ground, MatrixNorm::MaxAbs) <= 1e-10);
}

TEST_CASE("gibbs_density: Z_numeric matches the closed form at the test point") {
  const ModelParams p{1.0, 0.25, 1.0};
  const DensityOperator rho = gibbs_density(p, 60);
  CHECK(rho.raw_trace == Approx(1.8455624016525238).epsilon(1e-10));
  CHECK(rho.raw_trace == Approx(partition_function(p)).epsilon(1e-10));
}

TEST_CASE("reduced_density: single amplitude gives the vacuum projector") {
  DoubledState s;
  s.amplitudes = CMatrix::Zero(6, 6);
  s.amplitudes(0, 0) = 1.0;
  const DensityOperator rho = reduced_density(s);
  CHECK(rho.matrix(0, 0).real() == Approx(1.0));
  CHECK(rho.matrix.cwiseAbs().sum() == Approx(1.0));
}

TEST_CASE("reduced_density: Schmidt-diagonal amplitudes") {
  DoubledState s;
  s.amplitudes = CMatrix::Zero(4, 4);
  const double c[4] = {0.8, 0.5, 0.3, std::sqrt(1.0 - 0.64 - 0.25 - 0.09)};
  for (int n = 0; n < 4; ++n) s.amplitudes(n, n) = c[n];
  const DensityOperator rho = reduced_density(s);
  for (int n = 0; n < 4; ++n) {
    CHECK(rho.matrix(n, n).real() == Approx(c[n] * c[n]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(reduced_density(DoubledState{CMatrix::Zero(3, 3), 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("reduced_density equals gibbs_density for the closed-form state") {
  const ModelParams p{1.0, 0.25, 1.0};
  const DoubledState s = generalized_thermo_state(p, 60);
  const DensityOperator red = reduced_density(s);
  const DensityOperator rho = gibbs_density(p, 60);
  CHECK(matrix_distance(red.matrix, rho.matrix, MatrixNorm::Trace) <= 1e-8);
  CHECK(red.matrix.trace().real() == Approx(1.0).epsilon(1e-10));
  const HermitianEig eig = eig_hermitian(red.matrix);
  CHECK(eig.eigenvalues.minCoeff() >= -1e-10);
}

TEST_CASE("von_neumann_entropy: pure and maximally mixed states") {
  DensityOperator pure{CMatrix::Zero(5, 5), 1.0};
  pure.matrix(2, 2) = 1.0;
  CHECK(von_neumann_entropy(pure) == Approx(0.0).epsilon(1e-13));

  DensityOperator mixed{0.5 * CMatrix::Identity(2, 2), 1.0};
  CHECK(von_neumann_entropy(mixed) == Approx(std::log(2.0)).epsilon(1e-14));

  DensityOperator bad{CMatrix::Identity(2, 2), 1.0};
  bad.matrix(0, 0) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(bad), std::invalid_argument);
}

TEST_CASE("von_neumann_entropy matches the closed form at the test point") {
  const ModelParams p{1.0, 0.25, 1.0};
  const DensityOperator rho = gibbs_density(p, 60);
  const ThermoObservables obs = thermo_observables(p);
  CHECK(von_neumann_entropy(rho) == Approx(obs.entropy).epsilon(1e-8));
}

TEST_CASE("choose_cutoff: cold free field needs only the initial cutoff") {
  const ModelParams p{1.0, 0.0, 5.0};
  TruncationPolicy policy;
  policy.target_tolerance = 1e-10;
  CHECK(choose_cutoff(p, policy) == 16);
}

TEST_CASE("choose_cutoff: near-unstable hot point needs a far larger cutoff") {
  TruncationPolicy policy;
  policy.target_tolerance = 1e-6;
  const int free_cutoff = choose_cutoff(ModelParams{1.0, 0.0, 0.3}, policy);
  const int hot_cutoff = choose_cutoff(ModelParams{1.0, 0.45, 0.3}, policy);
  CHECK(free_cutoff <= 81);
  CHECK(hot_cutoff >= 2 * free_cutoff);
}

TEST_CASE("choose_cutoff: returned cutoff reproduces Z against cutoff+32") {
  const ModelParams p{1.0, 0.25, 1.0};
  TruncationPolicy policy;
  policy.target_tolerance = 1e-10;
  const int n = choose_cutoff(p, policy);
  const double z_n = gibbs_density(p, n).raw_trace;
  const double z_big = gibbs_density(p, n + 32).raw_trace;
  CHECK(std::abs(z_n - z_big) / z_big <= 1e-9);
}

TEST_CASE("choose_cutoff: explicit non-convergence at a tiny cap") {
  const ModelParams p{1.0, 0.4, 0.3};
  TruncationPolicy policy;
  policy.initial_cutoff = 8;
  policy.max_cutoff = 24;
  policy.target_tolerance = 1e-10;
  bool threw = false;
  try {
    choose_cutoff(p, policy);
  } catch (const NonConvergenceError& e) {
    threw = true;
    CHECK(e.best_residual() > 1e-10);
    CHECK(std::isfinite(e.best_residual()));
  }
  CHECK(threw);
}

TEST_CASE("Z_numeric is nondecreasing in N and approaches Eq-27 from below") {
  const ModelParams p{1.0, 0.25, 1.0};
  const double z_closed = partition_function(p);
  double prev = 0.0;
  for (const int n : {16, 24, 36, 54, 81}) {
    const double z = gibbs_density(p, n).raw_trace;
    CHECK(z >= prev);
    CHECK(z <= z_closed * (1.0 + 1e-12));
    prev = z;
  }
}

TEST_CASE("entropy invariant under a truncation-unitary squeeze") {
  // generator-exponential squeeze is exactly unitary at the cutoff; on a
  // well-converged state the spectrum must survive conjugation
  const ModelParams p{1.0, 0.0, 2.0};
  const DensityOperator rho = gibbs_density(p, 64);
  const FockOperators ops = fock_operators(64);
  const double r = 0.1;
  const CMatrix gen = 0.5 * r * (ops.raise * ops.raise - ops.lower * ops.lower);
  const CMatrix u = expm_antihermitian(gen);
  DensityOperator rotated{u * rho.matrix * u.adjoint(), 1.0};
  CHECK(von_neumann_entropy(rotated) ==
        Approx(von_neumann_entropy(rho)).epsilon(1e-9));
}
