#include "shubin/calculus.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "shubin/error.hpp"
#include "shubin/registry.hpp"

namespace shubin {

bool Sector::contains(Complex z) const {
  if (std::abs(z) == 0.0) return true;
  double rel = std::fmod(std::arg(z) - theta, 2 * kPi);
  if (rel < 0) rel += 2 * kPi;
  return rel <= theta_prime - theta + 1e-15;
}

static double ray_distance(Complex z, double phi) {
  double d = std::remainder(std::arg(z) - phi, 2 * kPi);
  if (std::abs(d) >= kPi / 2) return std::abs(z);
  return std::abs(z) * std::abs(std::sin(d));
}

double Sector::distance(Complex z) const {
  if (contains(z)) return 0.0;
  return std::min(ray_distance(z, theta), ray_distance(z, theta_prime));
}

// ---------------------------------------------------------------------------
namespace {

std::shared_ptr<const SphereGrid> pick_grid(const ClassicalSymbol& a, const SharpOpts& opts) {
  if (opts.grid) return opts.grid;
  for (const auto& c : a.components())
    if (c.is_grid()) return std::shared_ptr<const SphereGrid>(c.grid_data()->grid);
  return SphereGrid::standard(a.space_dim());
}

// d_xi^alpha applied by repeated single derivatives (alpha over xi slots).
HomogeneousComponent apply_multi_deriv(const HomogeneousComponent& c, const std::vector<int>& mi,
                                       int n, bool xi_side) {
  HomogeneousComponent cur = c;
  for (int slot = 0; slot < n; ++slot)
    for (int k = 0; k < mi[slot]; ++k) cur = cur.derivative(xi_side ? n + slot : slot);
  return cur;
}

void check_depth(const ClassicalSymbol& s, int N, const char* who) {
  if (s.has_grid_components())
    require(N <= s.depth(), "TruncationMismatch",
            std::string(who) + ": requested depth exceeds the stored expansion of a grid symbol");
}

}  // namespace

ClassicalSymbol sharp(const ClassicalSymbol& a, const ClassicalSymbol& b, int N,
                      const SharpOpts& opts) {
  require(a.space_dim() == b.space_dim() && a.matrix_dim() == b.matrix_dim(), "DimMismatch",
          "sharp product needs matching dimensions");
  check_depth(a, N, "sharp");
  check_depth(b, N, "sharp");
  const int n = a.space_dim(), q = a.matrix_dim();
  const int max_alpha = (N - 1) / 2;
  const auto& alphas = MultiIndexTable::get(n, std::max(max_alpha, 0));
  SharpOpts o = opts;
  if (!o.grid) o.grid = pick_grid(a.has_grid_components() ? a : b, opts);

  // memoized d_xi^alpha a_j and d_x^alpha b_l
  std::vector<std::vector<HomogeneousComponent>> da(a.depth()), db(b.depth());
  std::vector<std::vector<char>> da_set(a.depth()), db_set(b.depth());
  auto deriv_of = [&](std::vector<std::vector<HomogeneousComponent>>& store,
                      std::vector<std::vector<char>>& flags, const ClassicalSymbol& s, int j,
                      int ai, bool xi_side) -> const HomogeneousComponent& {
    auto& row = store[j];
    auto& set = flags[j];
    if (row.empty()) {
      row.resize(alphas.size_up_to(max_alpha));
      set.assign(alphas.size_up_to(max_alpha), 0);
    }
    if (!set[ai]) {
      row[ai] = apply_multi_deriv(s.component(j), alphas.mi(ai), n, xi_side);
      set[ai] = 1;
    }
    return row[ai];
  };

  std::vector<HomogeneousComponent> comps;
  Complex order = a.order() + b.order();
  for (int k = 0; k < N; ++k) {
    HomogeneousComponent acc = HomogeneousComponent::zero(order - double(k), n, q);
    for (int ai = 0; ai < alphas.size_up_to(max_alpha); ++ai) {
      const int o2 = 2 * alphas.order_of(ai);
      if (o2 > k) continue;
      for (int j = 0; j + o2 <= k; ++j) {
        const int l = k - o2 - j;
        if (j >= a.depth() || l >= b.depth()) continue;
        const auto& fa = deriv_of(da, da_set, a, j, ai, true);
        if (fa.is_zero()) continue;
        const auto& fb = deriv_of(db, db_set, b, l, ai, false);
        if (fb.is_zero()) continue;
        Complex factor = std::pow(Complex(0.0, -1.0), alphas.order_of(ai)) /
                         alphas.factorial_of(ai);
        acc = HomogeneousComponent::sum(
            acc, HomogeneousComponent::product(fa, fb).scaled(factor));
      }
    }
    comps.push_back(std::move(acc));
  }
  std::shared_ptr<const ExactEval> exact;
  if (a.exact() && b.exact()) exact = a.exact()->compose(*b.exact());
  return ClassicalSymbol(order, n, q, std::move(comps), a.excision(), exact);
}

ClassicalSymbol sharp_power(const ClassicalSymbol& a, int k, int N, const SharpOpts& opts) {
  require(k >= 1, "BadArgument", "sharp_power needs k >= 1");
  ClassicalSymbol acc = a;
  for (int i = 1; i < k; ++i) acc = sharp(acc, a, N, opts);
  return acc;
}

ClassicalSymbol adjoint(const ClassicalSymbol& a, int N, const SharpOpts& opts) {
  check_depth(a, N, "adjoint");
  const int n = a.space_dim(), q = a.matrix_dim();
  const int max_alpha = (N - 1) / 2;
  const auto& alphas = MultiIndexTable::get(n, std::max(max_alpha, 0));
  std::vector<HomogeneousComponent> comps;
  Complex order = std::conj(a.order());
  for (int k = 0; k < N; ++k) {
    HomogeneousComponent acc = HomogeneousComponent::zero(order - double(k), n, q);
    for (int ai = 0; ai < alphas.size_up_to(max_alpha); ++ai) {
      const int o2 = 2 * alphas.order_of(ai);
      if (o2 > k) continue;
      const int j = k - o2;
      if (j >= a.depth()) continue;
      HomogeneousComponent c = a.component(j).dagger();
      // d_xi^alpha D_x^alpha
      for (int slot = 0; slot < n; ++slot)
        for (int t = 0; t < alphas.mi(ai)[slot]; ++t)
          c = c.derivative(slot).derivative(n + slot);
      Complex factor =
          std::pow(Complex(0.0, -1.0), alphas.order_of(ai)) / alphas.factorial_of(ai);
      acc = HomogeneousComponent::sum(acc, c.scaled(factor));
    }
    comps.push_back(std::move(acc));
  }
  // self-adjoint registered families keep their evaluator
  std::shared_ptr<const ExactEval> exact;
  if (auto hf = std::dynamic_pointer_cast<const HoFunctionEval>(a.exact())) {
    bool real = true;
    for (const auto& b : hf->blocks())
      real = real && std::abs(b.amplitude.imag()) < 1e-14 && std::abs(b.exponent.imag()) < 1e-14;
    if (real) exact = a.exact();
  }
  return ClassicalSymbol(order, n, q, std::move(comps), a.excision(), exact);
}

HomogeneousComponent principal_restrict(const ClassicalSymbol& a,
                                        std::shared_ptr<const SphereGrid> grid) {
  if (!grid) grid = SphereGrid::standard(a.space_dim());
  require(a.depth() > 0 && !a.component(0).is_zero(), "EmptyExpansion",
          "symbol has no nonzero leading component");
  return a.component(0).to_grid(grid, 0);
}

Ellipticity is_elliptic(const ClassicalSymbol& a, double tol,
                        std::shared_ptr<const SphereGrid> grid) {
  if (!grid) grid = SphereGrid::standard(a.space_dim());
  require(a.depth() > 0, "EmptyExpansion", "no leading component");
  const auto& lead = a.component(0);
  double min_sv = std::numeric_limits<double>::infinity();
  double max_sv = 0.0;
  for (int i = 0; i < grid->size(); ++i) {
    Mat v = lead.eval(grid->nodes[i]);
    Eigen::JacobiSVD<Mat> svd(v);
    min_sv = std::min(min_sv, svd.singularValues().minCoeff());
    max_sv = std::max(max_sv, svd.singularValues().maxCoeff());
  }
  if (tol < 0) tol = 1e-9 * max_sv;
  return {min_sv > tol, min_sv};
}

LambdaEllipticity is_lambda_elliptic(const ClassicalSymbol& a, const Sector& sector, double tol,
                                     std::shared_ptr<const SphereGrid> grid) {
  if (!grid) grid = SphereGrid::standard(a.space_dim());
  require(a.depth() > 0, "EmptyExpansion", "no leading component");
  require(a.order().real() >= 0, "BadArgument", "Lambda-ellipticity is defined for Re(m) >= 0");
  const auto& lead = a.component(0);
  double margin = std::numeric_limits<double>::infinity();
  double min_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid->size(); ++i) {
    Mat v = lead.eval(grid->nodes[i]);
    Eigen::ComplexEigenSolver<Mat> es(v, /*computeEigenvectors=*/false);
    for (int e = 0; e < v.rows(); ++e) {
      Complex ev = es.eigenvalues()(e);
      margin = std::min(margin, sector.distance(ev));
      min_abs = std::min(min_abs, std::abs(ev));
    }
  }
  return {margin > tol, margin, min_abs};
}

HomogeneousComponent component_inverse(const HomogeneousComponent& c,
                                       std::shared_ptr<const SphereGrid> grid, int K) {
  const int n = c.n(), q = c.q();
  HomogeneousComponent cg = c.to_grid(grid, K);
  const auto& mit = MultiIndexTable::get(2 * n, K);
  auto out = std::make_shared<GridJets>();
  out->grid = grid;
  out->jet_order = K;
  out->data.resize(grid->size());
  for (int node = 0; node < grid->size(); ++node) {
    const auto& src = cg.grid_data()->data[node];
    auto& dst = out->data[node];
    dst.resize(mit.size_up_to(K));
    Mat inv = src[0].partialPivLu().solve(Mat::Identity(q, q));
    require((src[0] * inv - Mat::Identity(q, q)).norm() < 1e-8, "NotElliptic",
            "principal symbol is numerically singular on the sphere");
    dst[0] = inv;
    for (int g = 1; g < mit.size_up_to(K); ++g) {
      Mat acc = Mat::Zero(q, q);
      for (const auto& [d, rest] : mit.splits(g)) {
        if (d == 0) continue;  // delta > 0
        acc += mit.binom(g, d) * src[d] * dst[rest];
      }
      dst[g] = -inv * acc;
    }
  }
  return HomogeneousComponent::grid(-c.degree(), n, q, out);
}

ClassicalSymbol parametrix(const ClassicalSymbol& a, int N, const SharpOpts& opts) {
  auto grid = pick_grid(a, opts);
  auto ell = is_elliptic(a, -1.0, grid);
  require(ell.elliptic, "NotElliptic", "parametrix needs an elliptic symbol");
  const int n = a.space_dim(), q = a.matrix_dim();
  const Complex morder = a.order();

  // leading inverse: exact ring when the principal is a single radial term
  HomogeneousComponent b0;
  const auto& lead = a.component(0);
  bool ring_invertible = false;
  if (!lead.is_grid() && lead.terms().size() == 1) {
    const auto& t = lead.terms()[0];
    bool radial = true;
    for (int i = 0; i < n; ++i) radial = radial && t.beta[i] == 0 && t.alpha[i] == 0;
    if (radial) {
      Mat inv = t.coeff.partialPivLu().solve(Mat::Identity(q, q));
      b0 = HomogeneousComponent::ring(-morder, n, q,
                                      {SymbolTerm::matrix(inv, t.beta, t.alpha, -t.s_exp)});
      ring_invertible = true;
    }
  }
  if (!ring_invertible) b0 = component_inverse(lead, grid, std::max(N - 1, 0));

  const int max_alpha = (N - 1) / 2;
  const auto& alphas = MultiIndexTable::get(n, std::max(max_alpha, 0));
  std::vector<HomogeneousComponent> b{b0};
  for (int k = 1; k < N; ++k) {
    // 0 = sum_{j+l+2|alpha|=k} (1/alpha!) d_xi^alpha a_(m-j) D_x^alpha b_(-m-l); the
    // l = k term is the unknown, so b_(-m-k) = -b0 * (sum over l < k), degree -k sum.
    HomogeneousComponent S = HomogeneousComponent::zero(Complex(-double(k), 0.0), n, q);
    bool any = false;
    for (int ai = 0; ai < alphas.size_up_to(max_alpha); ++ai) {
      const int o2 = 2 * alphas.order_of(ai);
      if (o2 > k) continue;
      for (int j = 0; j + o2 <= k; ++j) {
        const int l = k - o2 - j;
        if (l >= k) continue;  // unknown stays on the left
        if (j >= a.depth()) continue;
        HomogeneousComponent fa = apply_multi_deriv(a.component(j), alphas.mi(ai), n, true);
        if (fa.is_zero()) continue;
        HomogeneousComponent fb = apply_multi_deriv(b[l], alphas.mi(ai), n, false);
        if (fb.is_zero()) continue;
        Complex factor =
            std::pow(Complex(0.0, -1.0), alphas.order_of(ai)) / alphas.factorial_of(ai);
        HomogeneousComponent term = HomogeneousComponent::product(fa, fb).scaled(factor);
        S = any ? HomogeneousComponent::sum(S, term) : term;
        any = true;
      }
    }
    if (!any) {
      b.push_back(HomogeneousComponent::zero(-morder - double(k), n, q));
      continue;
    }
    b.push_back(HomogeneousComponent::product(b0, S).scaled(-1.0));
  }
  return ClassicalSymbol(-morder, n, q, std::move(b), a.excision());
}

}  // namespace shubin
