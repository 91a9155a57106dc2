#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "shubin/calculus.hpp"
#include "shubin/error.hpp"
#include "shubin/registry.hpp"
#include "shubin/serialize.hpp"

using namespace shubin;

namespace {
ClassicalSymbol mono(int order, Complex c, int b, int a) {
  std::vector<HomogeneousComponent> comps;
  for (int j = 0; j < order; ++j)
    comps.push_back(HomogeneousComponent::zero(Complex(order - j, 0), 1, 1));
  comps.insert(comps.begin(),
               HomogeneousComponent::ring(Complex(order, 0), 1, 1,
                                          {SymbolTerm::scalar(1, c, {b}, {a}, 0.0)}));
  comps.resize(1);
  return ClassicalSymbol(Complex(order, 0), 1, 1, std::move(comps));
}
}  // namespace

TEST_CASE("HO principal component evaluates to 1/2 on the unit circle") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  CHECK(std::abs(ho.component(0).eval(PhasePoint::of(1, 0))(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("rho^{-2} has homogeneity degree -2") {
  auto c = HomogeneousComponent::ring(-2.0, 1, 1, {SymbolTerm::scalar(1, 1.0, {}, {}, -1.0)});
  CHECK(std::abs(c.eval(PhasePoint::of(2, 0))(0, 0) - 0.25) < 1e-15);
}

TEST_CASE("homogeneity identity on random points") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1), t(0.1, 10.0);
  auto c = HomogeneousComponent::ring(
      2.0, 1, 1,
      {SymbolTerm::scalar(1, Complex(0.7, 0.1), {1}, {1}, 0.0),
       SymbolTerm::scalar(1, 0.4, {}, {}, 1.0)});
  for (int i = 0; i < 20; ++i) {
    PhasePoint p = PhasePoint::of(u(rng) + 1.2, u(rng));
    double s = t(rng);
    Complex lhs = c.eval(p.scaled(s))(0, 0);
    Complex rhs = s * s * c.eval(p)(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("evaluation at the origin is rejected") {
  auto c = HomogeneousComponent::ring(-2.0, 1, 1, {SymbolTerm::scalar(1, 1.0, {}, {}, -1.0)});
  CHECK_THROWS_WITH_AS(c.eval(PhasePoint::of(0, 0)), doctest::Contains("ZeroPoint"), Error);
}

TEST_CASE("differentiation: d_xi (x^2+xi^2)/2 at (0,1) is 1") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  auto d = ho.component(0).derivative(1);  // axis 1 = xi for n=1
  CHECK(std::abs(d.eval(PhasePoint::of(0, 1))(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("product rule on ring terms: d_x of x rho^{-2}") {
  auto c = HomogeneousComponent::ring(-1.0, 1, 1, {SymbolTerm::scalar(1, 1.0, {1}, {}, -1.0)});
  auto d = c.derivative(0);
  // rho^{-2} - 2 x^2 rho^{-4}
  PhasePoint p = PhasePoint::of(0.8, -0.6);
  double r2 = p.rho2();
  Complex expect = 1.0 / r2 - 2 * 0.64 / (r2 * r2);
  CHECK(std::abs(d.eval(p)(0, 0) - expect) < 1e-14);
  CHECK(std::abs(d.degree() - Complex(-2, 0)) < 1e-14);
}

TEST_CASE("ring closure: repeated derivatives stay finite term sums") {
  auto c = HomogeneousComponent::ring(2.0, 1, 1, {SymbolTerm::scalar(1, 1.0, {1}, {1}, 0.0)});
  auto d = c;
  std::size_t prev = 1;
  for (int k = 0; k < 4; ++k) {
    d = d.derivative(k % 2);
    CHECK(d.terms().size() <= 3 * prev);
    prev = std::max<std::size_t>(1, d.terms().size());
  }
}

TEST_CASE("eval_full with exact evaluator: HO at origin and the glued cutoff") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  CHECK(std::abs(ho.eval_full(PhasePoint::of(0, 0))(0, 0) - 0.5) < 1e-12);

  std::vector<HomogeneousComponent> comps{HomogeneousComponent::ring(
      -2.0, 1, 1, {SymbolTerm::scalar(1, 1.0, {}, {}, -1.0)})};
  ClassicalSymbol glued(-2.0, 1, 1, std::move(comps));
  CHECK(glued.eval_full(PhasePoint::of(0.1, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("(1+rho^2)^{-2} at (1,1) is 1/9") {
  ClassicalSymbol a = ClassicalSymbol::shifted_quadratic_power(-2.0);
  CHECK(std::abs(a.eval_full(PhasePoint::of(1, 1))(0, 0) - 1.0 / 9.0) < 1e-14);
}

TEST_CASE("sphere quadrature on S^1 and S^3") {
  auto g1 = SphereGrid::circle(64);
  Mat one = sphere_quadrature([](const PhasePoint&, int) { return Mat::Constant(1, 1, 1.0); },
                              *g1);
  CHECK(std::abs(one(0, 0) - 2 * kPi) < 1e-12);
  Mat c2 = sphere_quadrature(
      [](const PhasePoint& p, int) { return Mat::Constant(1, 1, p.x(0) * p.x(0)); }, *g1);
  CHECK(std::abs(c2(0, 0) - kPi) < 1e-12);

  auto g3 = SphereGrid::sphere3();
  double s = 0;
  for (double w : g3->weights) s += w;
  CHECK(std::abs(s - 2 * kPi * kPi) < 1e-10);
}

TEST_CASE("S^1 trigonometric interpolation is spectrally exact") {
  auto g = SphereGrid::circle(32);
  std::vector<Mat> vals;
  for (int i = 0; i < g->size(); ++i) {
    double th = g->angles[i];
    vals.push_back(Mat::Constant(1, 1, std::cos(3 * th) + 0.5 * std::sin(7 * th)));
  }
  double phi = 0.7123;
  Mat v = g->interpolate(vals, PhasePoint::of(std::cos(phi), std::sin(phi)));
  CHECK(std::abs(v(0, 0) - (std::cos(3 * phi) + 0.5 * std::sin(7 * phi))) < 1e-11);
}

TEST_CASE("grid component: homogeneous extension and jet bookkeeping") {
  auto g = SphereGrid::circle(64);
  auto ring = HomogeneousComponent::ring(
      -2.0, 1, 1, {SymbolTerm::scalar(1, 2.0, {}, {}, -1.0)});
  auto gridc = ring.to_grid(g, 2);
  CHECK(gridc.jet_budget() == 2);
  CHECK(std::abs(gridc.eval(PhasePoint::of(2, 0))(0, 0) - 0.5) < 1e-12);
  auto d = gridc.derivative(0);
  CHECK(d.jet_budget() == 1);
  CHECK(std::abs(d.eval(PhasePoint::of(1, 0))(0, 0) - ring.derivative(0).eval(PhasePoint::of(1, 0))(0, 0)) < 1e-12);
  auto dd = d.derivative(1);
  CHECK_THROWS_WITH_AS(dd.derivative(0), doctest::Contains("JetExhausted"), Error);
}

TEST_CASE("sharp: xi # x = x xi - i") {
  ClassicalSymbol xi = mono(1, 1.0, 0, 1);
  ClassicalSymbol x = mono(1, 1.0, 1, 0);
  ClassicalSymbol c = sharp(xi, x, 4);
  PhasePoint p = PhasePoint::of(0.6, -1.1);
  CHECK(std::abs(c.component(0).eval(p)(0, 0) - Complex(0.6 * -1.1, 0)) < 1e-14);
  CHECK(c.component(1).is_zero());
  CHECK(std::abs(c.component(2).eval(p)(0, 0) - Complex(0, -1)) < 1e-14);
}

TEST_CASE("adjoint: HO is self-adjoint, all corrections vanish") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  ClassicalSymbol ad = adjoint(ho, 6);
  PhasePoint p = PhasePoint::of(1.3, 0.4);
  for (int k = 0; k < 6; ++k) {
    Mat v1 = ho.component(k).is_zero() ? Mat::Zero(1, 1) : ho.component(k).eval(p);
    Mat v2 = ad.component(k).is_zero() ? Mat::Zero(1, 1) : ad.component(k).eval(p);
    CHECK((v1 - v2).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("lambda ellipticity of HO and the diagonal pair") {
  ClassicalSymbol ho = ClassicalSymbol::harmonic_oscillator();
  auto g = SphereGrid::circle(64);
  auto e1 = is_lambda_elliptic(ho, Sector{kPi / 4, 3 * kPi / 4}, 1e-9, g);
  CHECK(e1.elliptic);
  CHECK(std::abs(e1.margin - 0.5 * std::sin(kPi / 4)) < 1e-12);
  auto e2 = is_lambda_elliptic(ho, Sector{-kPi / 4, kPi / 4}, 1e-9, g);
  CHECK_FALSE(e2.elliptic);
  auto e3 = is_lambda_elliptic(ClassicalSymbol::diag_ho({1, -1}), Sector{kPi / 4, 3 * kPi / 4},
                               1e-9, g);
  CHECK(e3.elliptic);
  // bare diag(rho^2, -rho^2): margin 1
  Mat pm = Mat::Zero(2, 2);
  pm(0, 0) = 1.0;
  pm(1, 1) = -1.0;
  std::vector<HomogeneousComponent> comps{
      HomogeneousComponent::ring(2.0, 1, 2, {SymbolTerm::matrix(pm, {0}, {0}, 1.0)})};
  ClassicalSymbol bare(2.0, 1, 2, std::move(comps));
  auto e4 = is_elliptic(bare, -1, g);
  CHECK(e4.elliptic);
  CHECK(std::abs(e4.margin - 1.0) < 1e-12);
  auto e5 = is_lambda_elliptic(bare, Sector{kPi / 4, 3 * kPi / 4}, 1e-9, g);
  CHECK(e5.elliptic);
}

TEST_CASE("principal restriction of HO is the constant 1/2") {
  auto g = SphereGrid::circle(64);
  auto s = principal_restrict(ClassicalSymbol::harmonic_oscillator(), g);
  for (int i = 0; i < g->size(); i += 7)
    CHECK(std::abs(s.value_at_node(i)(0, 0) - 0.5) < 1e-14);
}

TEST_CASE("parametrix requires ellipticity") {
  ClassicalSymbol x = mono(1, 1.0, 1, 0);
  CHECK_THROWS_WITH_AS(parametrix(x, 4), doctest::Contains("NotElliptic"), Error);
}

TEST_CASE("symbol JSON round trip") {
  ClassicalSymbol a = ClassicalSymbol::diag_ho({1.0, -2.0});
  nlohmann::json j = symbol_to_json(a, "diag_ho");
  ClassicalSymbol b = symbol_from_json(j);
  CHECK(b.matrix_dim() == 2);
  CHECK(std::abs(b.order() - a.order()) < 1e-14);
  PhasePoint p = PhasePoint::of(0.9, -0.2);
  for (int k = 0; k < a.depth(); ++k) {
    Mat v1 = a.component(k).is_zero() ? Mat::Zero(2, 2) : a.component(k).eval(p);
    Mat v2 = b.component(k).is_zero() ? Mat::Zero(2, 2) : b.component(k).eval(p);
    CHECK((v1 - v2).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK(b.exact() != nullptr);
  CHECK((a.eval_full(p) - b.eval_full(p)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("smoothed norm matches |p| away from the origin") {
  CHECK(std::abs(smoothed_norm(PhasePoint::of(3, 4), 0.5) - 5.0) < 1e-3);
  CHECK(smoothed_norm(PhasePoint::of(0, 0), 0.5) == doctest::Approx(0.5));
}
