#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace shubin {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// A point (x, xi) in phase space R^n x R^n.
struct PhasePoint {
  Eigen::VectorXd x, xi;

  int n() const { return static_cast<int>(x.size()); }
  double rho2() const { return x.squaredNorm() + xi.squaredNorm(); }
  double norm() const { return std::sqrt(rho2()); }

  PhasePoint scaled(double t) const { return {t * x, t * xi}; }

  static PhasePoint of(double X, double XI) {
    PhasePoint p;
    p.x = Eigen::VectorXd::Constant(1, X);
    p.xi = Eigen::VectorXd::Constant(1, XI);
    return p;
  }
  static PhasePoint from_vec(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size()) / 2;
    PhasePoint p;
    p.x = v.head(n);
    p.xi = v.tail(n);
    return p;
  }
  Eigen::VectorXd to_vec() const {
    Eigen::VectorXd v(2 * n());
    v.head(n()) = x;
    v.tail(n()) = xi;
    return v;
  }
};

inline bool approx_int(double v, double tol = 1e-9) {
  return std::abs(v - std::round(v)) < tol;
}

}  // namespace shubin
