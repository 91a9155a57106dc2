#include "shubin/registry.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "shubin/error.hpp"
#include "shubin/quadrature.hpp"

namespace shubin {

// ---------------------------------------------------------------------------
// Small dense polynomials in (x, xi), used for derivative tables of Gaussian
// integrands and for the exact symbols of H^k.
namespace {

struct Poly2 {
  int dx = 0, dy = 0;  // max degrees
  std::vector<Complex> c;  // c[i*(dy+1)+j] = coeff of x^i xi^j

  Complex& at(int i, int j) { return c[i * (dy + 1) + j]; }
  Complex get(int i, int j) const {
    if (i < 0 || j < 0 || i > dx || j > dy) return 0.0;
    return c[i * (dy + 1) + j];
  }
  static Poly2 make(int dx, int dy) {
    Poly2 p;
    p.dx = dx;
    p.dy = dy;
    p.c.assign((dx + 1) * (dy + 1), Complex(0.0, 0.0));
    return p;
  }
  static Poly2 one() {
    Poly2 p = make(0, 0);
    p.at(0, 0) = 1.0;
    return p;
  }
  Complex eval(double x, double y) const {
    Complex acc = 0.0;
    for (int i = dx; i >= 0; --i) {
      Complex row = 0.0;
      for (int j = dy; j >= 0; --j) row = row * y + get(i, j);
      acc = acc * x + row;
    }
    return acc;
  }
};

Poly2 grow(const Poly2& p, int dx, int dy) {
  Poly2 r = Poly2::make(std::max(p.dx, dx), std::max(p.dy, dy));
  for (int i = 0; i <= p.dx; ++i)
    for (int j = 0; j <= p.dy; ++j) r.at(i, j) = p.get(i, j);
  return r;
}

Poly2 deriv_x(const Poly2& p) {
  Poly2 r = Poly2::make(std::max(p.dx - 1, 0), p.dy);
  for (int i = 1; i <= p.dx; ++i)
    for (int j = 0; j <= p.dy; ++j) r.at(i - 1, j) = double(i) * p.get(i, j);
  return r;
}

Poly2 deriv_y(const Poly2& p) {
  Poly2 r = Poly2::make(p.dx, std::max(p.dy - 1, 0));
  for (int i = 0; i <= p.dx; ++i)
    for (int j = 1; j <= p.dy; ++j) r.at(i, j - 1) = double(j) * p.get(i, j);
  return r;
}

// p * (a x + b xi)
Poly2 mul_linear(const Poly2& p, Complex a, Complex b) {
  Poly2 r = Poly2::make(p.dx + 1, p.dy + 1);
  for (int i = 0; i <= p.dx; ++i)
    for (int j = 0; j <= p.dy; ++j) {
      r.at(i + 1, j) += a * p.get(i, j);
      r.at(i, j + 1) += b * p.get(i, j);
    }
  return r;
}

Poly2 add(const Poly2& p, const Poly2& q) {
  Poly2 r = Poly2::make(std::max(p.dx, q.dx), std::max(p.dy, q.dy));
  for (int i = 0; i <= r.dx; ++i)
    for (int j = 0; j <= r.dy; ++j) r.at(i, j) = p.get(i, j) + q.get(i, j);
  return r;
}

Poly2 scale(const Poly2& p, Complex c) {
  Poly2 r = p;
  for (auto& v : r.c) v *= c;
  return r;
}

// p * q
Poly2 mul(const Poly2& p, const Poly2& q) {
  Poly2 r = Poly2::make(p.dx + q.dx, p.dy + q.dy);
  for (int i = 0; i <= p.dx; ++i)
    for (int j = 0; j <= p.dy; ++j)
      for (int k = 0; k <= q.dx; ++k)
        for (int l = 0; l <= q.dy; ++l) r.at(i + k, j + l) += p.get(i, j) * q.get(k, l);
  return r;
}

// Exact KN symbol of H^k as a polynomial, via
// sigma_{k+1} = h sigma_k - i xi d_x sigma_k - (1/2) d_x^2 sigma_k.
const Poly2& h_power_poly(int k) {
  static std::mutex mu;
  static std::map<int, Poly2> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  if (cache.empty()) {
    cache.emplace(0, Poly2::one());
    Poly2 h = Poly2::make(2, 2);
    h.at(0, 0) = 0.5;
    h.at(2, 0) = 0.5;
    h.at(0, 2) = 0.5;
    cache.emplace(1, h);
  }
  int have = cache.rbegin()->first;
  Poly2 h = cache.at(1);
  while (have < k) {
    const Poly2& cur = cache.at(have);
    Poly2 next = mul(h, cur);
    Poly2 dxp = deriv_x(cur);
    next = add(next, scale(mul_linear(dxp, 0.0, 1.0), Complex(0.0, -1.0)));
    next = add(next, scale(deriv_x(dxp), -0.5));
    ++have;
    cache.emplace(have, std::move(next));
  }
  return cache.at(k);
}

}  // namespace

// ---------------------------------------------------------------------------
// Mellin representation of sigma(H^{-w}), Re w > 0:
//   sigma = (1/Gamma(w)) int_0^inf t^{w-1} E(t) dt,
//   E = e^{-t/2} sech(t)^{1/2} exp(-tanh(t)(x^2+xi^2)/2 + i(sech t - 1) x xi).
Complex ho_power_symbol(Complex w, const PhasePoint& p, int dx, int dxi) {
  require(w.real() > 0, "BadArgument", "ho_power_symbol needs Re w > 0");
  const double x = p.x(0), xi = p.xi(0);
  const double r2 = x * x + xi * xi;
  const auto& rule = exp_sinh_rule();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.t.size(); ++i) {
    const double t = rule.t[i];
    const double th = std::tanh(t);
    const double sech = 1.0 / std::cosh(t);
    const double expo = -0.5 * t - 0.5 * th * r2;
    if (expo < -700.0) continue;
    Complex E = std::sqrt(sech) * std::exp(Complex(expo, (sech - 1.0) * x * xi));
    Complex poly = 1.0;
    if (dx > 0 || dxi > 0) {
      // d^a_x d^b_xi E = P_ab(x, xi; t) E with dQ/dx = u x + v xi, dQ/dxi = u xi + v x
      const Complex u(-th, 0.0), v(0.0, sech - 1.0);
      Poly2 P = Poly2::one();
      for (int a = 0; a < dx; ++a) P = add(deriv_x(P), mul_linear(P, u, v));
      for (int b = 0; b < dxi; ++b) P = add(deriv_y(P), mul_linear(P, v, u));
      poly = P.eval(x, xi);
    }
    acc += rule.w[i] * std::exp((w - 1.0) * std::log(t)) * poly * E;
  }
  return acc * std::exp(-log_gamma(w));
}

Complex ho_symbol_general(Complex u, const PhasePoint& p, int dx, int dxi) {
  const double x = p.x(0), xi = p.xi(0);
  if (approx_int(u.real()) && std::abs(u.imag()) < 1e-12 && u.real() >= -0.25) {
    int k = static_cast<int>(std::lround(u.real()));
    Poly2 P = h_power_poly(k);
    for (int a = 0; a < dx; ++a) P = deriv_x(P);
    for (int b = 0; b < dxi; ++b) P = deriv_y(P);
    return P.eval(x, xi);
  }
  if (u.real() < 0) return ho_power_symbol(-u, p, dx, dxi);
  // reduction: sigma(H^u) = sigma(H^k) # sigma(H^{u-k}), finite KN sum
  const int k = static_cast<int>(std::floor(u.real())) + 1;
  const Complex rem = u - double(k);
  Complex acc = 0.0;
  Complex ipow = 1.0;  // (-i)^alpha
  for (int alpha = 0; alpha <= 2 * k; ++alpha) {
    for (int a = 0; a <= dx; ++a)
      for (int b = 0; b <= dxi; ++b) {
        Poly2 P = h_power_poly(k);
        for (int i = 0; i < a; ++i) P = deriv_x(P);
        for (int j = 0; j < b + alpha; ++j) P = deriv_y(P);
        Complex left = P.eval(x, xi);
        if (left == Complex(0.0, 0.0)) continue;
        Complex right = ho_power_symbol(-rem, p, dx - a + alpha, dxi - b);
        acc += binom_coeff(dx, a) * binom_coeff(dxi, b) / fact(alpha) * ipow * left * right;
      }
    ipow *= Complex(0.0, -1.0);
  }
  return acc;
}

// ---------------------------------------------------------------------------
Mat HoFunctionEval::eval(const PhasePoint& p) const {
  Mat m = Mat::Zero(q(), q());
  for (int i = 0; i < q(); ++i)
    m(i, i) = blocks_[i].amplitude * ho_symbol_general(blocks_[i].exponent, p);
  return m;
}

Mat HoFunctionEval::eval_deriv(const PhasePoint& p, const std::vector<int>& beta,
                               const std::vector<int>& alpha) const {
  Mat m = Mat::Zero(q(), q());
  for (int i = 0; i < q(); ++i)
    m(i, i) = blocks_[i].amplitude * ho_symbol_general(blocks_[i].exponent, p, beta[0], alpha[0]);
  return m;
}

std::shared_ptr<const ExactEval> HoFunctionEval::power(Complex z, double theta) const {
  std::vector<Block> out;
  for (const auto& b : blocks_) {
    if (std::abs(b.exponent.imag()) > 1e-12 || std::isnan(b.sign)) return nullptr;
    // spectrum of amp * H^e lies on the ray arg = arg(amp); branch angle in
    // ]theta - 2pi, theta[
    double ray = std::arg(b.amplitude);
    double phi = ray;
    while (phi >= theta) phi -= 2 * kPi;
    while (phi < theta - 2 * kPi) phi += 2 * kPi;
    if (!(phi > theta - 2 * kPi + 1e-12 && phi < theta - 1e-12)) return nullptr;
    Block nb;
    nb.amplitude = std::exp(z * Complex(std::log(std::abs(b.amplitude)), phi));
    nb.exponent = b.exponent * z;
    nb.sign = (std::abs(z.imag()) < 1e-12) ? 1.0 : std::nan("");
    out.push_back(nb);
  }
  return std::make_shared<HoFunctionEval>(std::move(out));
}

std::shared_ptr<const ExactEval> HoFunctionEval::compose(const ExactEval& rhs) const {
  const auto* other = dynamic_cast<const HoFunctionEval*>(&rhs);
  if (!other || other->q() != q()) return nullptr;
  std::vector<Block> out;
  for (int i = 0; i < q(); ++i) {
    Block nb;
    nb.amplitude = blocks_[i].amplitude * other->blocks_[i].amplitude;
    nb.exponent = blocks_[i].exponent + other->blocks_[i].exponent;
    nb.sign = 1.0;
    out.push_back(nb);
  }
  return std::make_shared<HoFunctionEval>(std::move(out));
}

std::shared_ptr<const ExactEval> HoFunctionEval::scaled(Complex c) const {
  std::vector<Block> out = blocks_;
  for (auto& b : out) b.amplitude *= c;
  return std::make_shared<HoFunctionEval>(std::move(out));
}

// ---------------------------------------------------------------------------
Mat ShiftedQuadraticPowerEval::eval(const PhasePoint& p) const {
  return Mat::Constant(1, 1, amp_ * std::pow(1.0 + p.rho2(), s_));
}

Mat ShiftedQuadraticPowerEval::eval_deriv(const PhasePoint& p, const std::vector<int>& beta,
                                          const std::vector<int>& alpha) const {
  // terms c * x^i xi^j (1+rho^2)^{s-k}
  struct T {
    double c;
    int i, j, k;
  };
  std::vector<T> terms{{amp_, 0, 0, 0}};
  auto diff = [&](bool wrt_x) {
    std::vector<T> out;
    for (const auto& t : terms) {
      int e = wrt_x ? t.i : t.j;
      if (e > 0) {
        T u = t;
        u.c *= e;
        (wrt_x ? u.i : u.j) -= 1;
        out.push_back(u);
      }
      T v = t;
      v.c *= 2 * (s_ - t.k);
      (wrt_x ? v.i : v.j) += 1;
      v.k += 1;
      out.push_back(v);
    }
    terms = std::move(out);
  };
  int total_x = beta.empty() ? 0 : beta[0];
  int total_xi = alpha.empty() ? 0 : alpha[0];
  for (int i = 0; i < total_x; ++i) diff(true);
  for (int j = 0; j < total_xi; ++j) diff(false);
  double x = p.x(0), xi = p.xi(0), w = 1.0 + p.rho2();
  double acc = 0;
  for (const auto& t : terms)
    acc += t.c * std::pow(x, t.i) * std::pow(xi, t.j) * std::pow(w, s_ - t.k);
  return Mat::Constant(1, 1, acc);
}

std::shared_ptr<const ExactEval> ShiftedQuadraticPowerEval::scaled(Complex c) const {
  require(std::abs(c.imag()) < 1e-14, "BadArgument", "real scale expected");
  return std::make_shared<ShiftedQuadraticPowerEval>(s_, amp_ * c.real());
}

// ---------------------------------------------------------------------------
void attach_registered_exact(ClassicalSymbol& sym, const std::string& tag) {
  if (tag.empty()) return;
  if (tag == "ho") {
    require(sym.space_dim() == 1 && sym.matrix_dim() == 1 && std::abs(sym.order() - 2.0) < 1e-12,
            "UnsupportedSymbol", "'ho' is the scalar order-2 oscillator, n = 1");
    sym.set_exact(ClassicalSymbol::harmonic_oscillator().exact());
    return;
  }
  if (tag == "diag_ho") {
    require(sym.space_dim() == 1 && std::abs(sym.order() - 2.0) < 1e-12, "UnsupportedSymbol",
            "'diag_ho' needs order 2, n = 1");
    // scales from the principal component's diagonal: a_(2) = diag(s_i/2) rho^2
    const auto& lead = sym.component(0);
    require(!lead.is_grid() && lead.terms().size() == 1, "UnsupportedSymbol",
            "'diag_ho' principal must be a single diagonal rho^2 term");
    std::vector<double> scales;
    const Mat& c = lead.terms()[0].coeff;
    for (int i = 0; i < sym.matrix_dim(); ++i) scales.push_back(2.0 * c(i, i).real());
    sym.set_exact(ClassicalSymbol::diag_ho(scales).exact());
    return;
  }
  if (tag == "shifted_quadratic_power") {
    require(sym.space_dim() == 1 && sym.matrix_dim() == 1 && std::abs(sym.order().imag()) < 1e-12,
            "UnsupportedSymbol", "'shifted_quadratic_power' is scalar, n = 1, real order");
    double s = sym.order().real() / 2.0;
    double amp = 1.0;
    const auto& lead = sym.component(0);
    if (!lead.is_grid() && lead.terms().size() == 1) amp = lead.terms()[0].coeff(0, 0).real();
    sym.set_exact(std::make_shared<ShiftedQuadraticPowerEval>(s, amp));
    return;
  }
  fail("UnsupportedSymbol", "unknown registry tag '" + tag + "'");
}

}  // namespace shubin
