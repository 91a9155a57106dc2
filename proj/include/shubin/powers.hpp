#pragma once
#include <optional>

#include "shubin/calculus.hpp"
#include "shubin/contour.hpp"

namespace shubin {

struct PowerOpts {
  std::shared_ptr<const SphereGrid> grid;  // default: canonical grid for n
  std::optional<ContourSpec> contour;      // overrides the derived contour
  int max_r_doublings = 6;
  double tail_rel_tol = 1e-10;
  // Re z above this threshold goes through the k-fold sharp reduction
  // a^{#k} # a_theta^{z-k}; the raw ray tails decay like R^{Re z} and are too
  // slow near Re z = 0 even with the analytic tail correction.
  double reduce_threshold = -0.8;
};

// Complex power a_theta^z as a classical symbol of order m z. Component k is
// the grid function  omega -> (1/2 pi i) int_{Gamma_theta} lambda_theta^z
// b_{-m-k}(omega, lambda) d lambda,  with jets to k_jet integrated from the
// resolvent jets. For Re z >= reduce_threshold the operator identity
// op(a^z) = op(a)^k op(a^{z-k}) is used instead of the (divergent or slowly
// converging) contour.
ClassicalSymbol complex_power(const ClassicalSymbol& a, Complex z, double theta, int k_comp = 8,
                              int k_jet = 0, const PowerOpts& opts = {});

// Sectorial projection Pi_{theta,theta'}(a) = a # ((1/2 pi i) int
// lambda^{-1} (lambda - a)^{-sharp} d lambda) over the ray-arc-ray contour
// positively surrounding the spectral sector swept clockwise from theta to
// theta'. Its leading component is the Riesz projection of the principal
// symbol onto the enclosed eigenvalues.
ClassicalSymbol sectorial_projection(const ClassicalSymbol& a, double theta, double theta_prime,
                                     int k_comp = 8, int k_jet = 4, const PowerOpts& opts = {});

// max componentwise deviation |(a^z # a^s - a^{z+s})_k| over k < k_comp and
// grid nodes.
double power_additivity_check(const ClassicalSymbol& a, Complex z, Complex s, double theta,
                              int k_comp = 6, const PowerOpts& opts = {});

}  // namespace shubin
