#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "shubin/calculus.hpp"
#include "shubin/error.hpp"
#include "shubin/oracle.hpp"
#include "shubin/registry.hpp"

using namespace shubin;

TEST_CASE("<h0| x |h1> = 1/sqrt(2)") {
  Eigen::MatrixXd X = oracle::x_matrix(4);
  CHECK(std::abs(X(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("commutation [x, D] = i on the trusted block") {
  const int N = 64;
  Mat X = oracle::x_matrix(N).cast<Complex>();
  Mat D = oracle::d_matrix(N);
  Mat C = X * D - D * X;
  for (int k = 0; k < (8 * N) / 10; ++k)
    CHECK(std::abs(C(k, k) - Complex(0, 1)) < 1e-12);
}

TEST_CASE("HO discretizes to diag(k+1)") {
  auto d = oracle::discretize(ClassicalSymbol::harmonic_oscillator(), 64);
  for (int k = 0; k < 50; ++k) CHECK(std::abs(d.matrix(k, k) - double(k + 1)) < 1e-12);
  // off-diagonal entries cancel exactly
  CHECK((d.matrix - d.matrix.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-12);
}

TEST_CASE("op(x xi) is Hermitian after the adjoint correction") {
  // op(x xi) - i/2 is self-adjoint: symbol symmetrization (a + a*)/2 = x xi - i/2
  const int N = 80;
  Mat X = oracle::x_matrix(N).cast<Complex>();
  Mat D = oracle::d_matrix(N);
  Mat A = X * D - Complex(0, 0.5) * Mat::Identity(N, N);
  const int T = (8 * N) / 10;
  CHECK((A.topLeftCorner(T, T) - A.topLeftCorner(T, T).adjoint()).norm() < 1e-10);
}

TEST_CASE("eigenvalues of the diagonal pair come in +- pairs") {
  auto d = oracle::discretize(ClassicalSymbol::diag_ho({1.0, -1.0}), 120);
  auto evs = oracle::eigenvalues(d, 12);
  // sorted by modulus: (1,-1), (2,-2), ...
  for (int j = 0; j < 6; ++j) {
    double a = evs[2 * j].real(), b = evs[2 * j + 1].real();
    CHECK(std::abs(std::abs(a) - (j + 1)) < 1e-9);
    CHECK(std::abs(a + b) < 1e-9);
  }
}

TEST_CASE("registered quartic (h#h) has eigenvalues j^2") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  ClassicalSymbol h2 = sharp(ho, ho, 5);
  auto d = oracle::discretize(h2, 200);
  auto evs = oracle::eigenvalues(d, 10);
  for (int j = 0; j < 10; ++j)
    CHECK(std::abs(evs[j].real() - double((j + 1) * (j + 1))) < 1e-6);
}

TEST_CASE("quantization consistency: discretize(a#b) = discretize(a) discretize(b)") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  ClassicalSymbol prod = sharp(ho, ho, 5);
  const int N = 80;
  auto da = oracle::discretize(ho, N);
  auto dp = oracle::discretize(prod, N);
  Mat direct = da.matrix * da.matrix;
  const int T = N - 6;
  CHECK((direct.topLeftCorner(T, T) - dp.matrix.topLeftCorner(T, T)).norm() < 1e-10);
}

TEST_CASE("eigenvalue stability under basis growth") {
  // shifted oscillator: (x^2+xi^2+1)/2 + 0.3 x has spectrum j + 1/2 - ... exact
  std::vector<HomogeneousComponent> comps;
  Mat half = Mat::Constant(1, 1, 0.5);
  comps.push_back(HomogeneousComponent::ring(2.0, 1, 1, {SymbolTerm::matrix(half, {0}, {0}, 1.0)}));
  comps.push_back(HomogeneousComponent::ring(
      1.0, 1, 1, {SymbolTerm::scalar(1, 0.3, {1}, {}, 0.0)}));
  comps.push_back(HomogeneousComponent::ring(0.0, 1, 1, {SymbolTerm::matrix(half, {0}, {0}, 0.0)}));
  ClassicalSymbol a(2.0, 1, 1, std::move(comps));
  auto d1 = oracle::discretize(a, 200);
  auto d2 = oracle::discretize(a, 400);
  auto e1 = oracle::eigenvalues(d1, 10);
  auto e2 = oracle::eigenvalues(d2, 10);
  for (int j = 0; j < 10; ++j) CHECK(std::abs(e1[j] - e2[j]) < 1e-9);
  // analytic value: completing the square shifts by -0.3^2/2
  CHECK(std::abs(e1[0].real() - (1.0 - 0.045)) < 1e-9);
}

TEST_CASE("oracle zeta(2) and zeta(4) against closed forms") {
  auto d = oracle::discretize(ClassicalSymbol::harmonic_oscillator(), 400);
  auto s2 = oracle::spectral_sum(d, oracle::SumKind::Zeta, Complex(2, 0));
  CHECK(std::abs(s2.value - kPi * kPi / 6.0) < 1e-10);
  auto s4 = oracle::spectral_sum(d, oracle::SumKind::Zeta, Complex(4, 0));
  CHECK(std::abs(s4.value - std::pow(kPi, 4) / 90.0) < 1e-10);
}

TEST_CASE("oracle eta of diag pairs") {
  auto d1 = oracle::discretize(ClassicalSymbol::diag_ho({1.0, -1.0}), 240);
  CHECK(std::abs(oracle::spectral_sum(d1, oracle::SumKind::Eta, Complex(2, 0)).value) < 1e-12);
  auto d2 = oracle::discretize(ClassicalSymbol::diag_ho({1.0, -2.0}), 320);
  auto s = oracle::spectral_sum(d2, oracle::SumKind::Eta, Complex(2, 0));
  CHECK(std::abs(s.value - kPi * kPi / 8.0) < 1e-8);
}

TEST_CASE("trace of op((1+rho^2)^{-2}) approaches 1/2") {
  ClassicalSymbol a = ClassicalSymbol::shifted_quadratic_power(-2.0, 9);
  auto d = oracle::discretize(a, 500);
  auto t = oracle::trace(d);
  CHECK(std::abs(t.value - 0.5) < 1e-4);
  // linearity in the symbol
  ClassicalSymbol b = ClassicalSymbol::shifted_quadratic_power(-2.0, 9, 2.0);
  auto d2 = oracle::discretize(b, 500);
  CHECK(std::abs(oracle::trace(d2).value - 2.0 * t.value) < 1e-10);
}

TEST_CASE("trace rejects non-trace-class orders") {
  auto d = oracle::discretize(ClassicalSymbol::harmonic_oscillator(), 60);
  CHECK_THROWS_WITH_AS(oracle::trace(d), doctest::Contains("NotTraceClass"), Error);
}

TEST_CASE("eigenvalue trust region is enforced") {
  auto d = oracle::discretize(ClassicalSymbol::harmonic_oscillator(), 50);
  CHECK_THROWS_WITH_AS(oracle::eigenvalues(d, 45), doctest::Contains("TruncationUntrusted"),
                       Error);
}

TEST_CASE("Euler-Maclaurin continuation reproduces classical zeta values") {
  // zeta(0) = -1/2, zeta(-1) = -1/12 continued from the integer lattice
  Complex z0 = oracle::em_tail(1.0, 1.0, 40, Complex(0.0, 0.0));
  Complex acc = 0;
  for (int j = 1; j <= 40; ++j) acc += 1.0;
  CHECK(std::abs(acc + z0 - Complex(-0.5, 0)) < 1e-6);
}
