#include "shubin/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

#include "shubin/error.hpp"

namespace shubin {

static GaussRule compute_gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0, p1, dp = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

GaussRule gauss_legendre_ab(int n, double a, double b) {
  const GaussRule& base = gauss_legendre(n);
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (b - a) * base.x[i] + 0.5 * (a + b);
    r.w[i] = 0.5 * (b - a) * base.w[i];
  }
  return r;
}

// Golub-Welsch on the Jacobi matrix.
GaussRule gauss_laguerre(int n, double alpha) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = 2 * k + 1 + alpha;
    if (k + 1 < n) {
      double b = std::sqrt((k + 1) * (k + 1 + alpha));
      J(k, k + 1) = b;
      J(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double mu0 = std::exp(std::lgamma(1.0 + alpha));
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v0 * v0;
  }
  return r;
}

static HermiteRule compute_gauss_hermite(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    double b = std::sqrt((k + 1) / 2.0);
    J(k, k + 1) = b;
    J(k + 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  HermiteRule r;
  r.y.resize(n);
  r.w_tilde.resize(n);
  // Christoffel: w~(y) = 1 / sum_{k<n} h_k(y)^2 with L^2-normalized Hermite
  // functions h_k; exact at Gauss nodes.
  for (int i = 0; i < n; ++i) {
    double y = es.eigenvalues()(i);
    r.y[i] = y;
    double h0 = std::pow(kPi, -0.25) * std::exp(-y * y / 2);
    double hm = 0, s = h0 * h0;
    double hk = h0;
    for (int k = 0; k + 1 < n; ++k) {
      double hn = std::sqrt(2.0 / (k + 1)) * y * hk - std::sqrt(double(k) / (k + 1)) * hm;
      hm = hk;
      hk = hn;
      s += hk * hk;
    }
    r.w_tilde[i] = 1.0 / s;
  }
  return r;
}

const HermiteRule& gauss_hermite(int n) {
  static std::mutex mu;
  static std::map<int, HermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_hermite(n)).first;
  return it->second;
}

const ExpSinhRule& exp_sinh_rule() {
  static ExpSinhRule rule = [] {
    ExpSinhRule r;
    const double h = 1.0 / 16.0;
    for (int j = -64; j <= 40; ++j) {
      double u = j * h;
      double t = std::exp(0.5 * kPi * std::sinh(u));
      if (t < 1e-15 || t > 80.0) continue;
      r.t.push_back(t);
      r.w.push_back(h * 0.5 * kPi * std::cosh(u) * t);
    }
    return r;
  }();
  return rule;
}

Complex log_gamma(Complex z) {
  static const double g[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059, 12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex a = g[0];
  Complex t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += g[i] / (z + double(i));
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace shubin
