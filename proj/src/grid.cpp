#include "shubin/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "shubin/error.hpp"
#include "shubin/quadrature.hpp"

namespace shubin {

double SphereGrid::surface() const { return n == 1 ? 2 * kPi : 2 * kPi * kPi; }

std::shared_ptr<const SphereGrid> SphereGrid::circle(int N) {
  require(N >= 4, "BadArgument", "circle grid needs >= 4 nodes");
  auto g = std::make_shared<SphereGrid>();
  g->n = 1;
  g->nodes.reserve(N);
  g->angles.reserve(N);
  for (int i = 0; i < N; ++i) {
    double th = 2 * kPi * i / N;
    g->angles.push_back(th);
    g->nodes.push_back(PhasePoint::of(std::cos(th), std::sin(th)));
    g->weights.push_back(2 * kPi / N);
  }
  return g;
}

static std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> w(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) w[i] /= (x[i] - x[j]);
  return w;
}

std::shared_ptr<const SphereGrid> SphereGrid::sphere3(int n1, int n2, int n3) {
  auto g = std::make_shared<SphereGrid>();
  g->n = 2;
  g->n1 = n1;
  g->n2 = n2;
  g->n3 = n3;
  GaussRule r1 = gauss_legendre_ab(n1, 0.0, kPi);
  GaussRule r2 = gauss_legendre_ab(n2, 0.0, kPi);
  g->phi1 = r1.x;
  g->phi2 = r2.x;
  for (int k = 0; k < n3; ++k) g->phi3.push_back(2 * kPi * k / n3);
  g->bw1 = barycentric_weights(g->phi1);
  g->bw2 = barycentric_weights(g->phi2);
  // omega = (cos p1, sin p1 cos p2, sin p1 sin p2 cos p3, sin p1 sin p2 sin p3),
  // measure sin^2 p1 sin p2 dp1 dp2 dp3; coordinates (x1,x2,xi1,xi2).
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) {
        double p1 = g->phi1[i], p2 = g->phi2[j], p3 = g->phi3[k];
        PhasePoint p;
        p.x = Eigen::VectorXd(2);
        p.xi = Eigen::VectorXd(2);
        p.x << std::cos(p1), std::sin(p1) * std::cos(p2);
        p.xi << std::sin(p1) * std::sin(p2) * std::cos(p3),
            std::sin(p1) * std::sin(p2) * std::sin(p3);
        g->nodes.push_back(p);
        g->weights.push_back(r1.w[i] * r2.w[j] * (2 * kPi / n3) * std::sin(p1) * std::sin(p1) *
                             std::sin(p2));
      }
  return g;
}

std::shared_ptr<const SphereGrid> SphereGrid::standard(int n, int nodes_1d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SphereGrid>> cache;
  require(n == 1 || n == 2, "Unsupported", "sphere grids exist for n in {1,2}");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, nodes_1d}];
  if (!slot) slot = (n == 1) ? circle(nodes_1d) : sphere3();
  return slot;
}

Mat sphere_quadrature(const std::function<Mat(const PhasePoint&, int)>& f, const SphereGrid& g) {
  Mat acc;
  for (int i = 0; i < g.size(); ++i) {
    Mat v = f(g.nodes[i], i);
    if (acc.size() == 0)
      acc = g.weights[i] * v;
    else
      acc += g.weights[i] * v;
  }
  return acc;
}

// Even-N trigonometric interpolation kernel.
static double trig_kernel(double u, int N) {
  double s = std::sin(0.5 * N * u);
  double t = std::tan(0.5 * u);
  if (std::abs(t) < 1e-300) return 1.0;
  return s / (N * t);
}

Mat SphereGrid::interpolate(const std::vector<Mat>& values, const PhasePoint& unit) const {
  require(static_cast<int>(values.size()) == size(), "BadArgument", "value/node count mismatch");
  if (n == 1) {
    double phi = std::atan2(unit.xi(0), unit.x(0));
    const int N = size();
    // exact-node shortcut
    for (int i = 0; i < N; ++i) {
      double d = std::remainder(phi - angles[i], 2 * kPi);
      if (std::abs(d) < 1e-13) return values[i];
    }
    Mat acc = Mat::Zero(values[0].rows(), values[0].cols());
    for (int i = 0; i < N; ++i) {
      double u = std::remainder(phi - angles[i], 2 * kPi);
      acc += trig_kernel(u, N) * values[i];
    }
    return acc;
  }
  // S^3 tensor grid: recover hyperspherical angles.
  double p1 = std::acos(std::clamp(unit.x(0), -1.0, 1.0));
  double s1 = std::sin(p1);
  double p2 = (s1 < 1e-14) ? phi2[0] : std::acos(std::clamp(unit.x(1) / s1, -1.0, 1.0));
  double s2 = std::sin(p2);
  double p3 = (s1 * s2 < 1e-14) ? 0.0 : std::atan2(unit.xi(1), unit.xi(0));
  auto idx = [&](int i, int j, int k) { return (i * n2 + j) * n3 + k; };

  // barycentric in phi1, phi2 and trig in phi3
  std::vector<double> c1(n1), c2(n2), c3(n3);
  auto bary = [](const std::vector<double>& x, const std::vector<double>& w, double t,
                 std::vector<double>& c) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(t - x[i]) < 1e-14) {
        std::fill(c.begin(), c.end(), 0.0);
        c[i] = 1.0;
        return;
      }
    }
    double denom = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      c[i] = w[i] / (t - x[i]);
      denom += c[i];
    }
    for (auto& v : c) v /= denom;
  };
  bary(phi1, bw1, p1, c1);
  bary(phi2, bw2, p2, c2);
  for (int k = 0; k < n3; ++k)
    c3[k] = trig_kernel(std::remainder(p3 - phi3[k], 2 * kPi), n3);

  Mat acc = Mat::Zero(values[0].rows(), values[0].cols());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) {
        double c = c1[i] * c2[j] * c3[k];
        if (c != 0.0) acc += c * values[idx(i, j, k)];
      }
  return acc;
}

}  // namespace shubin
