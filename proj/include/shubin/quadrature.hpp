#pragma once
#include <functional>
#include <vector>

#include "shubin/types.hpp"

namespace shubin {

struct GaussRule {
  std::vector<double> x, w;
};

// Gauss-Legendre on [-1,1].
const GaussRule& gauss_legendre(int n);
// Mapped to [a,b].
GaussRule gauss_legendre_ab(int n, double a, double b);
// Generalized Gauss-Laguerre for weight t^alpha e^{-t} on (0,inf).
GaussRule gauss_laguerre(int n, double alpha = 0.0);
// Gauss-Hermite nodes with Christoffel weights W~ such that
// int f(y) e^{-y^2} dy = sum W~_i * [f(y_i) e^{-y_i^2}] is exact for f
// polynomial of degree < 2n (weights absorb nothing; e^{-y^2} must be
// supplied by the integrand evaluation, which keeps everything in range).
struct HermiteRule {
  std::vector<double> y;        // nodes
  std::vector<double> w_tilde;  // 1 / sum_k h_k(y_i)^2, pairs with h-function products
};
const HermiteRule& gauss_hermite(int n);

// Double-exponential (exp-sinh) rule for int_0^inf f(t) dt where f may have an
// integrable endpoint singularity t^{c-1}, Re c > 0, and decays at infinity.
struct ExpSinhRule {
  std::vector<double> t, w;
};
const ExpSinhRule& exp_sinh_rule();

// log Gamma for complex argument (Lanczos).
Complex log_gamma(Complex z);

// |lam|^z * exp(i z arg), the branch power used along contours.
inline Complex pow_branch(Complex lam, Complex z, double arg) {
  return std::exp(z * Complex(std::log(std::abs(lam)), arg));
}

}  // namespace shubin
