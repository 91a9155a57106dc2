#include "shubin/functionals.hpp"

#include <cmath>

#include "shubin/error.hpp"
#include "shubin/parallel.hpp"
#include "shubin/quadrature.hpp"
#include "shubin/registry.hpp"

namespace shubin {

namespace {

std::shared_ptr<const SphereGrid> grid_for(const ClassicalSymbol& a,
                                           std::shared_ptr<const SphereGrid> grid) {
  if (grid) return grid;
  for (const auto& c : a.components())
    if (c.is_grid()) return std::shared_ptr<const SphereGrid>(c.grid_data()->grid);
  return SphereGrid::standard(a.space_dim());
}

bool excluded_order(Complex z, int two_n) {
  return std::abs(z.imag()) < 1e-9 && approx_int(z.real()) && z.real() > -two_n - 1e-9;
}

}  // namespace

Complex wodzicki_res(const ClassicalSymbol& a, std::shared_ptr<const SphereGrid> grid) {
  const int two_n = 2 * a.space_dim();
  Complex z = a.order();
  if (std::abs(z.imag()) > 1e-9) return 0.0;
  double jstar = z.real() + two_n;
  if (!approx_int(jstar) || jstar < -1e-9) return 0.0;
  int j = static_cast<int>(std::lround(jstar));
  if (j >= a.depth() && a.component(j).is_zero()) return 0.0;
  auto g = grid_for(a, grid);
  return a.component(j).sphere_integral_trace(*g) / std::pow(2 * kPi, a.space_dim());
}

KvResult kv_tr(const ClassicalSymbol& a, const KvOpts& opts) {
  const int n = a.space_dim();
  const int two_n = 2 * n;
  const Complex z = a.order();
  require(!excluded_order(z, two_n), "IntegerOrderPole",
          "TR is undefined at integer orders >= -2n");
  auto grid = grid_for(a, opts.grid);

  // depth of the formula: enough for the exterior integral to converge, and
  // past the near-pole sphere term when the order sits close to the lattice
  int p_min = std::max(0, static_cast<int>(std::floor(z.real() + two_n)) + 1);
  int p = opts.p.value_or(p_min);
  if (!opts.p && std::abs(z.imag()) < 0.5) {
    double jstar = std::round(z.real()) + two_n;
    if (jstar >= 0 && std::abs(z.real() + two_n - jstar) < 0.5)
      p = std::max(p, static_cast<int>(jstar) + 1);
  }
  require(double(p) > z.real() + two_n, "InsufficientExpansion",
          "depth p must satisfy Re(z) - p < -2n");
  if (a.has_grid_components())
    require(p <= a.depth(), "InsufficientExpansion",
            "glued symbol does not carry enough components");

  const ExcisionProfile chi_int = opts.excision.value_or(a.excision());
  require(std::abs(chi_int.r1 - 1.0) < 1e-12, "BadArgument",
          "the internal excision must be 1 on rho >= 1 (r1 = 1)");
  const double norm = std::pow(2 * kPi, -n);

  // component trace at a grid direction scaled by r, using stored node values
  auto comp_trace_node = [&](const HomogeneousComponent& comp, double r, int node) -> Complex {
    if (comp.is_zero()) return 0.0;
    Complex radial = std::exp(comp.degree() * std::log(Complex(r, 0.0)));
    if (comp.is_grid()) return radial * comp.value_at_node(node).trace();
    return comp.eval(grid->nodes[node].scaled(r)).trace();
  };

  auto full_trace_node = [&](double r, int node) -> Complex {
    if (a.exact()) return a.exact()->eval(grid->nodes[node].scaled(r)).trace();
    double c = a.excision().chi(r);
    if (c == 0.0) return 0.0;
    Complex acc = 0;
    for (const auto& comp : a.components()) acc += comp_trace_node(comp, r, node);
    return c * acc;
  };

  auto sphere_trace_full = [&](double r) -> Complex {
    Complex acc = 0;
    for (int i = 0; i < grid->size(); ++i) acc += grid->weights[i] * full_trace_node(r, i);
    return acc;
  };
  auto sphere_trace_remainder = [&](double r) -> Complex {
    Complex acc = 0;
    double c = chi_int.chi(r);
    for (int i = 0; i < grid->size(); ++i) {
      Complex v = full_trace_node(r, i);
      if (c != 0.0)
        for (int j = 0; j < p; ++j) v -= c * comp_trace_node(a.component(j), r, i);
      acc += grid->weights[i] * v;
    }
    return acc;
  };

  auto compute = [&](int rad_nodes) -> Complex {
    GaussRule ball = gauss_legendre_ab(rad_nodes, 0.0, 1.0);
    std::vector<Complex> ball_vals(rad_nodes);
    parallel_for(rad_nodes, [&](std::size_t i) {
      ball_vals[i] = std::pow(ball.x[i], two_n - 1) * sphere_trace_full(ball.x[i]);
    });
    Complex value = 0;
    for (int i = 0; i < rad_nodes; ++i) value += ball.w[i] * ball_vals[i];

    // exterior via r = 1/u
    GaussRule ext = gauss_legendre_ab(rad_nodes, 0.0, 1.0);
    std::vector<Complex> ext_vals(rad_nodes);
    parallel_for(rad_nodes, [&](std::size_t i) {
      double u = ext.x[i];
      double r = 1.0 / u;
      ext_vals[i] = std::pow(u, -two_n - 1) * sphere_trace_remainder(r);
    });
    for (int i = 0; i < rad_nodes; ++i) value += ext.w[i] * ext_vals[i];

    for (int j = 0; j < p; ++j) {
      const auto& comp = a.component(j);
      if (comp.is_zero()) continue;
      value -= comp.sphere_integral_trace(*grid) / (Complex(two_n, 0.0) + z - double(j));
    }
    return norm * value;
  };

  // decay check on the remainder
  {
    double s8 = std::abs(sphere_trace_remainder(8.0));
    double s16 = std::abs(sphere_trace_remainder(16.0));
    if (s8 > 1e-13) {
      double slope = std::log(std::max(s16, 1e-300) / s8) / std::log(2.0);
      require(slope < -two_n + 0.3, "TailDivergence",
              "remainder decays too slowly for the exterior integral");
    }
  }

  KvResult res;
  res.value = compute(opts.radial_nodes);
  if (opts.estimate_uncertainty) {
    Complex coarse = compute(std::max(16, (2 * opts.radial_nodes) / 3));
    res.uncertainty = std::abs(res.value - coarse);
  }
  if (!a.exact() && p > 0) {
    const auto& last = a.component(p - 1);
    if (!last.is_zero())
      res.uncertainty += 2.0 * std::abs(norm * last.sphere_integral_trace(*grid) /
                                        (Complex(two_n, 0.0) + z - double(p - 1)));
  }
  return res;
}

PoleFit tr_family_pole(const std::function<ClassicalSymbol(Complex)>& fam, Complex z0, double h,
                       const KvOpts& opts) {
  const std::vector<Complex> offsets{-2 * h, -h, h, 2 * h};
  std::vector<Complex> vals(4);
  int p_shared = 0;
  std::vector<ClassicalSymbol> syms;
  for (const auto& dz : offsets) syms.push_back(fam(z0 + dz));
  const int two_n = 2 * syms[0].space_dim();
  for (const auto& s : syms) {
    int pm = std::max(0, static_cast<int>(std::floor(s.order().real() + two_n)) + 2);
    p_shared = std::max(p_shared, pm);
  }
  for (int i = 0; i < 4; ++i) {
    KvOpts o = opts;
    o.p = p_shared;
    o.estimate_uncertainty = false;
    vals[i] = kv_tr(syms[i], o).value;
  }
  Eigen::MatrixXcd M(4, 3);
  Eigen::VectorXcd b(4);
  for (int i = 0; i < 4; ++i) {
    M(i, 0) = 1.0 / offsets[i];
    M(i, 1) = 1.0;
    M(i, 2) = offsets[i];
    b(i) = vals[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  require(qr.rank() == 3, "FitIllConditioned", "pole fit is rank deficient");
  Eigen::VectorXcd c = qr.solve(b);
  return {c(0), c(1)};
}

}  // namespace shubin
