#pragma once
#include <vector>

#include "shubin/types.hpp"

namespace shubin {

// Integration contours in the spectral parameter plane. Both kinds are
// traversed inward along the theta_hi ray (from R to eps, branch argument
// theta_hi), around the eps-arc with decreasing argument, and outward along
// the theta_lo ray (branch argument theta_lo). This winds once positively
// around { arg in (theta_lo, theta_hi), |lambda| > eps }. The keyhole
// Gamma_theta has theta_lo = theta - 2pi, so it surrounds everything off the
// branch ray; Gamma_{theta,theta'} encloses the sector swept clockwise from
// theta to theta'.
struct ContourSpec {
  enum class Kind { Keyhole, RayArcRay };
  Kind kind = Kind::Keyhole;
  double theta = kPi / 2;
  double theta_prime = 0.0;  // RayArcRay only; normalized below theta
  double eps = 0.25;
  double R = 1e6;
  int ray_panels = 24;
  int gauss_order = 16;
  int arc_nodes = 64;
  double grading = 2.0;  // informational; panels are geometric from eps to R

  double theta_hi() const { return theta; }
  double theta_lo() const;
};

struct ContourNode {
  Complex lambda;
  Complex weight;     // includes dlambda and traversal orientation
  double branch_arg;  // arg_theta(lambda) in ]theta-2pi, theta]
  // Ray bookkeeping for analytic tail corrections: nodes on the two rays share
  // a rho sample slot; dir is the per-d-rho orientation factor (+-e^{i theta}).
  int tail_slot = -1;
  double rho = 0.0;
  Complex dir{0.0, 0.0};
};

struct Contour {
  ContourSpec spec;
  std::vector<ContourNode> nodes;
  std::vector<double> tail_rhos;  // rho samples of the outermost panels
};

Contour contour_nodes(const ContourSpec& spec);

}  // namespace shubin
