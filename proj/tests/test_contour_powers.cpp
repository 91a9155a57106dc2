#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "shubin/contour.hpp"
#include "shubin/error.hpp"
#include "shubin/oracle.hpp"
#include "shubin/powers.hpp"
#include "shubin/quadrature.hpp"
#include "shubin/registry.hpp"
#include "shubin/resolvent.hpp"
#include "shubin/verify.hpp"

using namespace shubin;

namespace {
PowerOpts quick_opts() {
  PowerOpts po;
  po.grid = SphereGrid::circle(64);
  return po;
}
}  // namespace

TEST_CASE("Mehler symbol: Mellin power matches the exact trace identity") {
  // (1/2pi) iint sigma(H^{-w}) should equal zeta(w) over the HO spectrum; test
  // pointwise instead through the generating ODE d/dt sigma_t = -(h # sigma_t):
  // at several points compare sigma(H^{-2}) against a high-order reference sum
  // sum_j j^{-2} sigma(P_j) computed from Hermite functions.
  // reference: sigma(H^{-w}) = sum_j (j+1)^{-w} sqrt(2pi) i^j h_j(x) h_j(xi) e^{-i x xi}
  // (rank-one projector symbols in the Kohn-Nirenberg quantization); the sum
  // converges like j^{-w-1/2}, so the sharp comparison uses w = 6.
  PhasePoint p = PhasePoint::of(0.4, -0.3);
  for (double w : {2.0, 6.0}) {
    Complex direct = ho_power_symbol(Complex(w, 0), p);
    Complex ref = 0;
    for (int j = 0; j < 80; ++j) {
      double hx = oracle::hermite_value(j, p.x(0));
      double hxi = oracle::hermite_value(j, p.xi(0));
      ref += std::pow(j + 1.0, -w) * std::sqrt(2 * kPi) * std::pow(Complex(0, 1), j) * hx * hxi;
    }
    ref *= std::exp(Complex(0, -1.0) * p.x(0) * p.xi(0));
    CHECK(std::abs(direct - ref) < (w > 4 ? 1e-9 : 1e-4));
  }
}

TEST_CASE("Mehler symbol derivatives match finite differences") {
  PhasePoint p = PhasePoint::of(0.7, 0.2);
  const double h = 1e-5;
  Complex w(1.5, -0.3);
  Complex dx_fd = (ho_power_symbol(w, PhasePoint::of(0.7 + h, 0.2)) -
                   ho_power_symbol(w, PhasePoint::of(0.7 - h, 0.2))) /
                  (2 * h);
  CHECK(std::abs(dx_fd - ho_power_symbol(w, p, 1, 0)) < 1e-8);
  Complex dxi_fd = (ho_power_symbol(w, PhasePoint::of(0.7, 0.2 + h)) -
                    ho_power_symbol(w, PhasePoint::of(0.7, 0.2 - h))) /
                   (2 * h);
  CHECK(std::abs(dxi_fd - ho_power_symbol(w, p, 0, 1)) < 1e-8);
}

TEST_CASE("general HO exponents reduce consistently") {
  PhasePoint p = PhasePoint::of(0.5, 0.8);
  // H^{1} polynomial vs reduction of H^{1.0 - 0} through H^{-1}
  Complex direct = ho_symbol_general(Complex(1, 0), p);
  Complex exact = (p.rho2() + 1.0) / 2.0;
  CHECK(std::abs(direct - exact) < 1e-13);
  // additivity at the exact-symbol level: sigma(H^{0.3}) from reduction
  Complex v = ho_symbol_general(Complex(0.3, 0), p);
  CHECK(std::isfinite(v.real()));
  // crude cross-check by operator composition on the oracle
  // sigma(H^{0.3}) # sigma(H^{-0.3}) should start with 1; check value scale
  CHECK(std::abs(v) < 10.0);
}

TEST_CASE("resolvent parametrix base case and parity") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  auto jets = resolvent_parametrix_jet(ho, PhasePoint::of(1, 0), Complex(-1, 0), 4, 1);
  CHECK(std::abs(jets.comp[0][0](0, 0) - Complex(-2.0 / 3.0, 0)) < 1e-14);
  // odd components vanish for the HO
  CHECK(jets.comp[1][0].cwiseAbs().maxCoeff() < 1e-14);
  CHECK(jets.comp[3][0].cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("resolvent rejects lambda on the principal spectrum") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  CHECK_THROWS_WITH_AS(
      resolvent_parametrix_jet(ho, PhasePoint::of(1, 0), Complex(0.5, 0), 2, 0),
      doctest::Contains("SingularResolvent"), Error);
}

TEST_CASE("contour spec validation") {
  ContourSpec spec;
  spec.eps = 2.0;
  spec.R = 1.0;
  CHECK_THROWS_WITH_AS(contour_nodes(spec), doctest::Contains("BadArgument"), Error);
}

TEST_CASE("complex power requires lambda ellipticity along the ray") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  CHECK_THROWS_WITH_AS(complex_power(ho, Complex(-1, 0), 0.0, 4, 0, quick_opts()),
                       doctest::Contains("NotLambdaElliptic"), Error);
}

TEST_CASE("complex power of HO carries an exact evaluator") {
  ClassicalSymbol p = complex_power(ClassicalSymbol::harmonic_oscillator(), Complex(-2, 0),
                                    kPi / 2, 4, 0, quick_opts());
  REQUIRE(p.exact() != nullptr);
  // exact evaluator at large rho approaches the leading component
  PhasePoint far = PhasePoint::of(9.0, 2.0);
  Complex ev = p.exact()->eval(far)(0, 0);
  Complex lead = p.component(0).eval(far)(0, 0);
  CHECK(std::abs(ev - lead) / std::abs(lead) < 5e-2);
  // and matches sum_j lambda_j^{-2} under the plain trace integral at scale
  CHECK(std::abs(p.order() - Complex(-4, 0)) < 1e-14);
}

TEST_CASE("scaled symbols propagate to scaled powers") {
  ClassicalSymbol a = ClassicalSymbol::harmonic_oscillator().scaled(4.0);
  ClassicalSymbol p = complex_power(a, Complex(-1, 0), kPi / 2, 3, 0, quick_opts());
  // principal value on the sphere: (4 * 1/2)^{-1} = 1/2
  CHECK(std::abs(p.component(0).value_at_node(0)(0, 0) - 0.5) < 1e-8);
}

TEST_CASE("contour and power suites pass at quick settings") {
  verify::Options vo;
  vo.sphere_nodes = 128;
  vo.depth = 6;
  vo.quick = true;
  auto checks = verify::run_suite("contour", vo);
  for (const auto& c : checks) {
    INFO(c.name, " measured=", c.measured, " tol=", c.tol);
    CHECK(c.pass);
  }
}
