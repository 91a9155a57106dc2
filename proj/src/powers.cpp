#include "shubin/powers.hpp"

#include <cmath>
#include <functional>

#include "shubin/error.hpp"
#include "shubin/parallel.hpp"
#include "shubin/quadrature.hpp"
#include "shubin/registry.hpp"
#include "shubin/resolvent.hpp"

namespace shubin {

namespace {

struct ContourResult {
  std::vector<std::shared_ptr<GridJets>> comps;  // per k
  double worst_tail_rel = 0.0;
};

// Integrate weight(lambda) * b_{-m-k}(omega, lambda) over the contour for all
// sphere nodes, including jets to k_jet. Component values and first-order jets
// receive an analytic ray-tail correction fitted to the power-law ladder
// rho^{z_eff - 1 - (k+l)/m} of the combined ray integrand.
ContourResult contour_integrate(const ClassicalSymbol& a, const Contour& contour,
                                const std::function<Complex(Complex, double)>& weight,
                                Complex z_eff, int k_comp, int k_jet,
                                std::shared_ptr<const SphereGrid> grid) {
  const int n = a.space_dim(), q = a.matrix_dim();
  const int qq = q * q;
  const double m = a.order().real();
  const auto& mit = MultiIndexTable::get(2 * n, std::max(k_jet, 1));
  const int ngam = mit.size_up_to(k_jet);
  const int ngam_tail = std::min(mit.size_up_to(std::min(k_jet, 1)), ngam);
  const int nslots = static_cast<int>(contour.tail_rhos.size());
  const Complex inv2pii = 1.0 / Complex(0.0, 2 * kPi);

  RingJetExpansion aj(a, k_comp, resolvent_a_order(k_comp, k_jet));

  std::vector<Complex> wnode(contour.nodes.size());
  for (std::size_t i = 0; i < contour.nodes.size(); ++i)
    wnode[i] = contour.nodes[i].weight *
               weight(contour.nodes[i].lambda, contour.nodes[i].branch_arg) * inv2pii;

  const int N = grid->size();
  const std::size_t stride = static_cast<std::size_t>(ngam) * qq;
  const std::size_t stride_tail = static_cast<std::size_t>(ngam_tail) * qq;
  std::vector<std::vector<Complex>> acc(N), tails(N);
  parallel_for(N, [&](std::size_t node) {
    ResolventKernel kern(aj, k_comp, k_jet);
    kern.set_point(aj.eval(grid->nodes[node]));
    auto& A = acc[node];
    A.assign(k_comp * stride, Complex(0, 0));
    auto& T = tails[node];
    T.assign(static_cast<std::size_t>(nslots) * k_comp * stride_tail, Complex(0, 0));
    for (std::size_t i = 0; i < contour.nodes.size(); ++i) {
      const auto& nd = contour.nodes[i];
      kern.compute(nd.lambda);
      const Complex w = wnode[i];
      for (int k = 0; k < k_comp; ++k) {
        const Complex* src = kern.comp(k);
        Complex* dst = &A[k * stride];
        for (std::size_t e = 0; e < stride; ++e) dst[e] += w * src[e];
        if (nd.tail_slot >= 0) {
          const Complex f = nd.dir * weight(nd.lambda, nd.branch_arg) * inv2pii;
          Complex* td =
              &T[(static_cast<std::size_t>(nd.tail_slot) * k_comp + k) * stride_tail];
          for (std::size_t e = 0; e < stride_tail; ++e) td[e] += f * src[e];
        }
      }
    }
  });

  const double R = contour.spec.R;
  double worst = 0.0;
  if (nslots >= 8) {
    for (int k = 0; k < k_comp; ++k) {
      const int L = 4;
      std::vector<Complex> nu(L);
      for (int l = 0; l < L; ++l) nu[l] = z_eff - 1.0 - double(k + l) / m;
      Eigen::MatrixXcd M(nslots, L);
      for (int s = 0; s < nslots; ++s)
        for (int l = 0; l < L; ++l)
          M(s, l) = std::exp(nu[l] * std::log(contour.tail_rhos[s] / R));
      Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
      for (int node = 0; node < N; ++node) {
        Eigen::MatrixXcd B(nslots, stride_tail);
        for (int s = 0; s < nslots; ++s)
          for (std::size_t e = 0; e < stride_tail; ++e)
            B(s, e) =
                tails[node][(static_cast<std::size_t>(s) * k_comp + k) * stride_tail + e];
        Eigen::MatrixXcd C = qr.solve(B);
        double tail_norm = 0, val_norm = 0;
        for (std::size_t e = 0; e < stride_tail; ++e) {
          Complex t = 0;
          for (int l = 0; l < L; ++l) t += C(l, e) * (-R / (nu[l] + 1.0));
          acc[node][k * stride + e] += t;
          if (e < static_cast<std::size_t>(qq)) {
            tail_norm += std::norm(t);
            val_norm += std::norm(acc[node][k * stride + e]);
          }
        }
        worst = std::max(worst, std::sqrt(tail_norm / (val_norm + 1e-300)));
      }
    }
  }

  ContourResult out;
  out.worst_tail_rel = worst;
  for (int k = 0; k < k_comp; ++k) {
    auto gj = std::make_shared<GridJets>();
    gj->grid = grid;
    gj->jet_order = k_jet;
    gj->data.resize(N);
    for (int node = 0; node < N; ++node) {
      gj->data[node].resize(ngam);
      for (int g = 0; g < ngam; ++g) {
        Mat mm(q, q);
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j)
            mm(i, j) = acc[node][k * stride + static_cast<std::size_t>(g) * qq + i * q + j];
        gj->data[node][g] = std::move(mm);
      }
    }
    out.comps.push_back(std::move(gj));
  }
  return out;
}

ContourSpec derive_contour(double theta, double theta_lo_raw, ContourSpec::Kind kind,
                           double min_abs_eig, const std::optional<ContourSpec>& over) {
  ContourSpec spec;
  if (over) spec = *over;
  spec.kind = kind;
  spec.theta = theta;
  spec.theta_prime = theta_lo_raw;
  if (!over) {
    spec.eps = std::min(0.5 * min_abs_eig, 0.5);
    spec.R = (kind == ContourSpec::Kind::RayArcRay) ? 1e7 : 1e6;
  }
  return spec;
}

}  // namespace

ClassicalSymbol complex_power(const ClassicalSymbol& a, Complex z, double theta, int k_comp,
                              int k_jet, const PowerOpts& opts) {
  require(std::abs(a.order().imag()) < 1e-12 && a.order().real() > 0, "BadArgument",
          "complex powers need real positive order");
  const double m = a.order().real();
  auto grid = opts.grid ? opts.grid : SphereGrid::standard(a.space_dim());
  auto ell = is_lambda_elliptic(a, Sector::ray(theta), 1e-9, grid);
  require(ell.elliptic, "NotLambdaElliptic",
          "the principal symbol meets the ray of theta; no complex powers");

  if (z.real() > opts.reduce_threshold) {
    int k = std::max(1, static_cast<int>(std::floor(z.real())) + 1);
    while (z.real() - k > opts.reduce_threshold) ++k;
    const int base_jets = k_jet + (k_comp - 1) / 2;
    ClassicalSymbol base = complex_power(a, z - double(k), theta, k_comp, base_jets, opts);
    SharpOpts so;
    so.grid = grid;
    ClassicalSymbol ak = sharp_power(a, k, k_comp, so);
    return sharp(ak, base, k_comp, so);
  }

  ContourSpec spec = derive_contour(theta, theta - 2 * kPi, ContourSpec::Kind::Keyhole,
                                    ell.min_abs_eig, opts.contour);
  auto weight = [z](Complex lam, double arg) { return pow_branch(lam, z, arg); };
  ContourResult res;
  for (int attempt = 0;; ++attempt) {
    Contour c = contour_nodes(spec);
    res = contour_integrate(a, c, weight, z, k_comp, k_jet, grid);
    if (res.worst_tail_rel < opts.tail_rel_tol || attempt >= opts.max_r_doublings) break;
    spec.R *= 2;
  }
  std::vector<HomogeneousComponent> comps;
  for (int k = 0; k < k_comp; ++k)
    comps.push_back(HomogeneousComponent::grid(m * z - double(k), a.space_dim(), a.matrix_dim(),
                                               res.comps[k]));
  std::shared_ptr<const ExactEval> exact;
  if (a.exact()) exact = a.exact()->power(z, theta);
  return ClassicalSymbol(m * z, a.space_dim(), a.matrix_dim(), std::move(comps), a.excision(),
                         exact);
}

ClassicalSymbol sectorial_projection(const ClassicalSymbol& a, double theta, double theta_prime,
                                     int k_comp, int k_jet, const PowerOpts& opts) {
  require(std::abs(a.order().imag()) < 1e-12 && a.order().real() > 0, "BadArgument",
          "sectorial projections need real positive order");
  const double m = a.order().real();
  auto grid = opts.grid ? opts.grid : SphereGrid::standard(a.space_dim());
  auto ell1 = is_lambda_elliptic(a, Sector::ray(theta), 1e-9, grid);
  auto ell2 = is_lambda_elliptic(a, Sector::ray(theta_prime), 1e-9, grid);
  require(ell1.elliptic && ell2.elliptic, "NotLambdaElliptic",
          "spectrum of the principal symbol meets a contour ray");

  ContourSpec spec = derive_contour(theta, theta_prime, ContourSpec::Kind::RayArcRay,
                                    std::min(ell1.min_abs_eig, ell2.min_abs_eig), opts.contour);
  auto weight = [](Complex lam, double) { return 1.0 / lam; };
  Contour c = contour_nodes(spec);
  ContourResult res = contour_integrate(a, c, weight, Complex(-1.0, 0.0), k_comp, k_jet, grid);

  std::vector<HomogeneousComponent> comps;
  for (int k = 0; k < k_comp; ++k)
    comps.push_back(HomogeneousComponent::grid(-m - double(k), a.space_dim(), a.matrix_dim(),
                                               res.comps[k]));
  ClassicalSymbol S(-a.order(), a.space_dim(), a.matrix_dim(), std::move(comps), a.excision());
  SharpOpts so;
  so.grid = grid;
  ClassicalSymbol pi = sharp(a, S, k_comp, so);

  // registered diagonal families project exactly onto the enclosed blocks
  if (auto hf = std::dynamic_pointer_cast<const HoFunctionEval>(a.exact())) {
    const double hi = spec.theta_hi(), lo = spec.theta_lo();
    std::vector<HoFunctionEval::Block> blocks;
    bool ok = true;
    for (const auto& b : hf->blocks()) {
      double ray = std::arg(b.amplitude);
      while (ray >= hi) ray -= 2 * kPi;
      while (ray < hi - 2 * kPi) ray += 2 * kPi;
      HoFunctionEval::Block nb;
      nb.exponent = 0.0;
      nb.amplitude = (ray > lo && ray < hi) ? 1.0 : 0.0;
      ok = ok && std::abs(b.exponent.imag()) < 1e-12;
      blocks.push_back(nb);
    }
    if (ok) pi.set_exact(std::make_shared<HoFunctionEval>(std::move(blocks)));
  }
  return pi;
}

double power_additivity_check(const ClassicalSymbol& a, Complex z, Complex s, double theta,
                              int k_comp, const PowerOpts& opts) {
  auto grid = opts.grid ? opts.grid : SphereGrid::standard(a.space_dim());
  PowerOpts po = opts;
  po.grid = grid;
  const int jets = (k_comp - 1) / 2;
  ClassicalSymbol az = complex_power(a, z, theta, k_comp, jets, po);
  ClassicalSymbol as = complex_power(a, s, theta, k_comp, jets, po);
  ClassicalSymbol azs = complex_power(a, z + s, theta, k_comp, 0, po);
  SharpOpts so;
  so.grid = grid;
  ClassicalSymbol prod = sharp(az, as, k_comp, so);
  double worst = 0.0;
  for (int k = 0; k < k_comp; ++k) {
    const auto& c1 = prod.component(k);
    const auto& c2 = azs.component(k);
    for (int i = 0; i < grid->size(); ++i) {
      Mat d = (c1.is_zero() ? Mat::Zero(a.matrix_dim(), a.matrix_dim())
                            : c1.eval(grid->nodes[i])) -
              (c2.is_zero() ? Mat::Zero(a.matrix_dim(), a.matrix_dim())
                            : c2.eval(grid->nodes[i]));
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace shubin
