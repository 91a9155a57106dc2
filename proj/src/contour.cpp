#include "shubin/contour.hpp"

#include <cmath>

#include "shubin/error.hpp"
#include "shubin/quadrature.hpp"

namespace shubin {

double ContourSpec::theta_lo() const {
  if (kind == Kind::Keyhole) return theta - 2 * kPi;
  double lo = theta_prime;
  while (lo >= theta) lo -= 2 * kPi;
  while (lo < theta - 2 * kPi) lo += 2 * kPi;
  return lo;
}

Contour contour_nodes(const ContourSpec& spec) {
  require(spec.eps > 0 && spec.eps < spec.R, "BadArgument", "contour needs 0 < eps < R");
  require(spec.ray_panels >= 1 && spec.gauss_order >= 2 && spec.arc_nodes >= 4, "BadArgument",
          "contour panel counts");
  Contour c;
  c.spec = spec;
  const double hi = spec.theta_hi(), lo = spec.theta_lo();
  const Complex ehi = std::exp(Complex(0.0, hi));
  const Complex elo = std::exp(Complex(0.0, lo));
  const double g = std::pow(spec.R / spec.eps, 1.0 / spec.ray_panels);
  const GaussRule& gl = gauss_legendre(spec.gauss_order);

  const int tail_panels = std::min(2, spec.ray_panels);
  int slot = 0;
  for (int pnl = 0; pnl < spec.ray_panels; ++pnl) {
    const double a = spec.eps * std::pow(g, pnl);
    const double b = spec.eps * std::pow(g, pnl + 1);
    const bool in_tail = pnl >= spec.ray_panels - tail_panels;
    for (int i = 0; i < spec.gauss_order; ++i) {
      const double rho = 0.5 * (b - a) * gl.x[i] + 0.5 * (a + b);
      const double w = 0.5 * (b - a) * gl.w[i];
      ContourNode in;  // theta_hi ray traversed from R to eps
      in.lambda = rho * ehi;
      in.weight = -w * ehi;
      in.branch_arg = hi;
      ContourNode out;  // theta_lo ray traversed from eps to R
      out.lambda = rho * elo;
      out.weight = w * elo;
      out.branch_arg = lo;
      if (in_tail) {
        in.tail_slot = out.tail_slot = slot++;
        in.rho = out.rho = rho;
        in.dir = -ehi;
        out.dir = elo;
        c.tail_rhos.push_back(rho);
      }
      c.nodes.push_back(in);
      c.nodes.push_back(out);
    }
  }
  // eps-arc, argument decreasing from hi to lo. The keyhole arc is a full
  // circle, where the midpoint (trapezoid) rule is spectrally accurate for the
  // periodic integrand; partial arcs use Gauss-Legendre.
  if (spec.kind == ContourSpec::Kind::Keyhole) {
    const int M = spec.arc_nodes;
    const double hstep = 2 * kPi / M;
    for (int i = 0; i < M; ++i) {
      const double t = hi - (i + 0.5) * hstep;
      ContourNode nd;
      nd.lambda = spec.eps * std::exp(Complex(0.0, t));
      nd.weight = -hstep * Complex(0.0, 1.0) * nd.lambda;  // minus: decreasing t
      nd.branch_arg = t;
      c.nodes.push_back(nd);
    }
  } else {
    GaussRule arc = gauss_legendre_ab(spec.arc_nodes, lo, hi);
    for (int i = 0; i < spec.arc_nodes; ++i) {
      const double t = arc.x[i];
      ContourNode nd;
      nd.lambda = spec.eps * std::exp(Complex(0.0, t));
      nd.weight = -arc.w[i] * Complex(0.0, 1.0) * nd.lambda;
      nd.branch_arg = t;
      c.nodes.push_back(nd);
    }
  }
  return c;
}

}  // namespace shubin
