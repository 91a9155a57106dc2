#include "shubin/spectra.hpp"

#include <cmath>

#include "shubin/error.hpp"
#include "shubin/registry.hpp"

namespace shubin {

namespace {

double require_real_positive_order(const ClassicalSymbol& a) {
  require(std::abs(a.order().imag()) < 1e-12 && a.order().real() > 0, "BadArgument",
          "spectral functions need real positive order");
  return a.order().real();
}

bool near_pole_point(Complex z, double m, int two_n, double tol = 1e-9) {
  // pole lattice z = (2n - j)/m, j in N_0
  if (std::abs(z.imag()) > tol) return false;
  double j = two_n - m * z.real();
  return approx_int(j, tol * m) && j > -tol;
}

SpectraOpts with_grid(const ClassicalSymbol& a, SpectraOpts opts) {
  if (!opts.grid) opts.grid = SphereGrid::standard(a.space_dim());
  opts.power.grid = opts.grid;
  opts.kv.grid = opts.grid;
  return opts;
}

bool tr_excluded(Complex order, int two_n) {
  return std::abs(order.imag()) < 1e-9 && approx_int(order.real()) &&
         order.real() > -two_n - 1e-9;
}

}  // namespace

Eigen::Vector4cd laurent_fit(const std::vector<Complex>& w, const std::vector<Complex>& f) {
  const int N = static_cast<int>(w.size());
  Eigen::MatrixXcd M(N, 4);
  Eigen::VectorXcd b(N);
  for (int i = 0; i < N; ++i) {
    M(i, 0) = 1.0 / w[i];
    M(i, 1) = 1.0;
    M(i, 2) = w[i];
    M(i, 3) = w[i] * w[i];
    b(i) = f[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  require(qr.rank() == 4, "FitIllConditioned", "Laurent fit is rank deficient");
  return qr.solve(b);
}

MeromorphicSample zeta(const ClassicalSymbol& a, Complex z, double theta,
                       const SpectraOpts& opts_in) {
  SpectraOpts opts = with_grid(a, opts_in);
  const double m = require_real_positive_order(a);
  const int two_n = 2 * a.space_dim();
  require(!near_pole_point(z, m, two_n), "PolePoint",
          "z sits on the pole lattice (2n - j)/m of zeta");
  ClassicalSymbol power = complex_power(a, -z, theta, opts.depth, 0, opts.power);
  KvResult kv = kv_tr(power, opts.kv);
  return {z, kv.value, kv.uncertainty, "symbolic"};
}

PoleReport zeta_pole(const ClassicalSymbol& a, int j, double theta, const SpectraOpts& opts_in) {
  SpectraOpts opts = with_grid(a, opts_in);
  const double m = require_real_positive_order(a);
  const int two_n = 2 * a.space_dim();
  PoleReport rep;
  rep.predicted_location = Complex((two_n - j) / m, 0.0);

  // formula route: (1/m) Res(a_theta^{-(2n-j)/m}); the residue needs the
  // degree -2n component, i.e. k = j of the power expansion.
  int k_comp = std::max(opts.depth, j + 1);
  ClassicalSymbol power = complex_power(a, -rep.predicted_location, theta, k_comp, 0, opts.power);
  rep.residue_formula_value = wodzicki_res(power, opts.grid) / m;

  // fit route: 4 zeta samples around the predicted location
  const double h = 0.05;
  const std::vector<Complex> offs{Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)};
  Eigen::MatrixXcd M(4, 4);
  Eigen::VectorXcd rhs(4);
  for (int i = 0; i < 4; ++i) {
    Complex zi = rep.predicted_location + offs[i];
    Complex fi = zeta(a, zi, theta, opts).value;
    // f (w - d) = c + e (w - d)  =>  f w = d f + c + e w - g, g = e d
    M(i, 0) = fi;
    M(i, 1) = 1.0;
    M(i, 2) = offs[i];
    M(i, 3) = -1.0;
    rhs(i) = fi * offs[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  require(qr.rank() == 4, "FitIllConditioned", "pole location fit is rank deficient");
  Eigen::VectorXcd u = qr.solve(rhs);
  rep.location = rep.predicted_location + u(0);
  rep.residue = u(1);
  rep.fit_residual = (M * u - rhs).norm();
  return rep;
}

namespace {

void require_self_adjoint(const ClassicalSymbol& a, const SpectraOpts& opts) {
  const int N = std::max(1, std::min(a.depth(), opts.depth));
  SharpOpts so;
  so.grid = opts.grid;
  ClassicalSymbol ad = adjoint(a, N, so);
  double scale = 0.0, diff = 0.0;
  for (int k = 0; k < N; ++k) {
    const auto& c1 = a.component(k);
    const auto& c2 = ad.component(k);
    for (int i = 0; i < opts.grid->size(); ++i) {
      const auto& node = opts.grid->nodes[i];
      Mat v1 = c1.is_zero() ? Mat::Zero(a.matrix_dim(), a.matrix_dim()) : c1.eval(node);
      Mat v2 = c2.is_zero() ? Mat::Zero(a.matrix_dim(), a.matrix_dim()) : c2.eval(node);
      scale = std::max(scale, v1.cwiseAbs().maxCoeff());
      diff = std::max(diff, (v1 - v2).cwiseAbs().maxCoeff());
    }
  }
  require(diff <= 1e-8 * std::max(scale, 1.0), "NotSelfAdjoint",
          "eta needs a self-adjoint symbol (a* = a componentwise)");
}

MeromorphicSample eta_direct(const ClassicalSymbol& a, Complex z, double theta_up,
                             const SpectraOpts& opts) {
  SharpOpts so;
  so.grid = opts.grid;
  ClassicalSymbol b = sharp(a, a, opts.depth, so);
  Complex w = -(z + 1.0) / 2.0;
  ClassicalSymbol pw = complex_power(b, w, theta_up, opts.depth, (opts.depth - 1) / 2 + 1,
                                     opts.power);
  ClassicalSymbol sym = sharp(a, pw, opts.depth, so);
  KvResult kv = kv_tr(sym, opts.kv);
  return {z, kv.value, kv.uncertainty, "symbolic"};
}

}  // namespace

MeromorphicSample eta(const ClassicalSymbol& a, Complex z, double theta_up, double theta_down,
                      const SpectraOpts& opts_in) {
  (void)theta_down;  // the |a| powers live over the positive spectrum of a#a
  SpectraOpts opts = with_grid(a, opts_in);
  const double m = require_real_positive_order(a);
  const int two_n = 2 * a.space_dim();
  require_self_adjoint(a, opts);

  Complex sym_order = -m * z;
  if (!tr_excluded(sym_order, two_n)) return eta_direct(a, z, theta_up, opts);

  // continuation: 6 samples on a circle of radius 0.1, angles off the real axis
  const double rad = 0.1;
  std::vector<Complex> w, f;
  for (int k = 0; k < 6; ++k) {
    double phi = kPi / 6 + k * kPi / 3;
    Complex dz = rad * std::exp(Complex(0.0, phi));
    MeromorphicSample s = eta_direct(a, z + dz, theta_up, opts);
    w.push_back(dz);
    f.push_back(s.value);
  }
  Eigen::Vector4cd c = laurent_fit(w, f);
  MeromorphicSample out;
  out.z = z;
  out.value = c(1);
  out.truncation_uncertainty = std::abs(c(0)) / rad + 1e-9;
  out.method = "symbolic";
  return out;
}

Complex eta_residue_at_zero(const ClassicalSymbol& a, double theta, double theta_prime,
                            const SpectraOpts& opts_in) {
  SpectraOpts opts = with_grid(a, opts_in);
  require_real_positive_order(a);
  ClassicalSymbol pi = sectorial_projection(a, theta, theta_prime, opts.depth, 2, opts.power);
  return Complex(0.0, 2 * kPi) * wodzicki_res(pi, opts.grid);
}

Complex zeta_branch_difference(const ClassicalSymbol& a, Complex z, double theta_up,
                               double theta_down, const SpectraOpts& opts_in) {
  SpectraOpts opts = with_grid(a, opts_in);
  const double m = require_real_positive_order(a);
  const int two_n = 2 * a.space_dim();
  if (!near_pole_point(z, m, two_n)) {
    MeromorphicSample up = zeta(a, z, theta_up, opts);
    MeromorphicSample dn = zeta(a, z, theta_down, opts);
    return up.value - dn.value;
  }
  // Integer powers are branch independent; measure the numerical defect of
  // the two computed expansions through their sphere integrals.
  ClassicalSymbol pu = complex_power(a, -z, theta_up, opts.depth, 0, opts.power);
  ClassicalSymbol pd = complex_power(a, -z, theta_down, opts.depth, 0, opts.power);
  Complex acc = 0.0;
  const double norm = std::pow(2 * kPi, -a.space_dim());
  for (int k = 0; k < opts.depth; ++k) {
    Complex su = pu.component(k).is_zero() ? Complex(0, 0)
                                           : pu.component(k).sphere_integral_trace(*opts.grid);
    Complex sd = pd.component(k).is_zero() ? Complex(0, 0)
                                           : pd.component(k).sphere_integral_trace(*opts.grid);
    Complex denom = Complex(two_n, 0.0) + (-m * z) - double(k);
    if (std::abs(denom) > 0.1) acc -= (su - sd) / denom;
  }
  return norm * acc;
}

}  // namespace shubin
