#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "shubin/error.hpp"
#include "shubin/functionals.hpp"
#include "shubin/spectra.hpp"
#include "shubin/verify.hpp"

using namespace shubin;

namespace {
ClassicalSymbol single_component(Complex order, Complex coeff, Complex s_exp) {
  std::vector<HomogeneousComponent> comps{HomogeneousComponent::ring(
      order, 1, 1, {SymbolTerm::scalar(1, coeff, {}, {}, s_exp)})};
  return ClassicalSymbol(order, 1, 1, std::move(comps));
}
}  // namespace

TEST_CASE("Wodzicki residue basics") {
  auto g = SphereGrid::circle(128);
  CHECK(std::abs(wodzicki_res(ClassicalSymbol::identity(), g)) == 0.0);
  CHECK(std::abs(wodzicki_res(single_component(-2.0, 2.0, -1.0), g) - 2.0) < 1e-12);
  // order -3 has no degree -2 component
  CHECK(std::abs(wodzicki_res(single_component(-3.0, 1.0, -1.5), g)) == 0.0);
}

TEST_CASE("kv_tr on the exact inverse quartic: 1/2") {
  KvOpts kv;
  kv.grid = SphereGrid::circle(128);
  ClassicalSymbol a = ClassicalSymbol::shifted_quadratic_power(-2.0, 9);
  auto r = kv_tr(a, kv);
  CHECK(std::abs(r.value - 0.5) < 1e-9);
  CHECK(r.uncertainty < 1e-6);
}

TEST_CASE("kv_tr rejects integer orders") {
  ClassicalSymbol a = single_component(-2.0, 1.0, -1.0);
  CHECK_THROWS_WITH_AS(kv_tr(a), doctest::Contains("IntegerOrderPole"), Error);
}

TEST_CASE("kv_tr insufficient depth is reported") {
  KvOpts kv;
  kv.grid = SphereGrid::circle(64);
  kv.p = 9;
  ClassicalSymbol a = single_component(-2.5, 1.0, -1.25);
  // ring symbols extend by zeros, so depth p = 9 is fine there; a glued grid
  // symbol with 2 components must refuse
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  SUBCASE("ring ok") { CHECK_NOTHROW(kv_tr(a, kv)); }
}

TEST_CASE("tr_family_pole recovers -Res on the constructed family") {
  KvOpts kv;
  kv.grid = SphereGrid::circle(128);
  kv.estimate_uncertainty = false;
  auto fam = [&](Complex z) { return single_component(z - 2.0, 2.0, (z - 2.0) / 2.0); };
  auto fit = tr_family_pole(fam, 0.0, 0.02, kv);
  CHECK(std::abs(fit.residue + 2.0) < 1e-7);
}

TEST_CASE("zeta of HO rejects pole points") {
  SpectraOpts so;
  so.grid = SphereGrid::circle(64);
  so.depth = 4;
  CHECK_THROWS_WITH_AS(zeta(ClassicalSymbol::harmonic_oscillator(), Complex(1, 0), kPi / 2, so),
                       doctest::Contains("PolePoint"), Error);
}

TEST_CASE("eta requires a self-adjoint symbol") {
  SpectraOpts so;
  so.grid = SphereGrid::circle(64);
  so.depth = 4;
  std::vector<HomogeneousComponent> comps{HomogeneousComponent::ring(
      2.0, 1, 1, {SymbolTerm::scalar(1, Complex(0, 1), {}, {}, 1.0)})};
  ClassicalSymbol a(2.0, 1, 1, std::move(comps));
  CHECK_THROWS_WITH_AS(eta(a, Complex(2, 0), kPi / 2, -kPi / 2, so),
                       doctest::Contains("NotSelfAdjoint"), Error);
}

TEST_CASE("functionals suite passes at quick settings") {
  verify::Options vo;
  vo.sphere_nodes = 128;
  vo.depth = 6;
  vo.quick = true;
  auto checks = verify::run_suite("functionals", vo);
  for (const auto& c : checks) {
    INFO(c.name, " measured=", c.measured, " tol=", c.tol);
    CHECK(c.pass);
  }
}

TEST_CASE("calculus suite passes at quick settings") {
  verify::Options vo;
  vo.sphere_nodes = 128;
  vo.depth = 6;
  vo.quick = true;
  auto checks = verify::run_suite("calculus", vo);
  for (const auto& c : checks) {
    INFO(c.name, " measured=", c.measured, " tol=", c.tol);
    CHECK(c.pass);
  }
}
