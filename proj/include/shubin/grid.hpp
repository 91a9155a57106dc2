#pragma once
#include <functional>
#include <memory>
#include <vector>

#include "shubin/types.hpp"

namespace shubin {

// Quadrature grid on S^{2n-1}. n=1: uniform trapezoid on the circle
// (spectrally exact for smooth integrands). n=2: tensor Gauss-Legendre in the
// two polar hyperspherical angles times trapezoid in the azimuthal one.
// Weights sum to the surface measure.
struct SphereGrid {
  int n = 1;
  std::vector<PhasePoint> nodes;
  std::vector<double> weights;

  // n == 1
  std::vector<double> angles;

  // n == 2 tensor structure
  int n1 = 0, n2 = 0, n3 = 0;
  std::vector<double> phi1, phi2, phi3;  // phi1, phi2 in (0,pi), phi3 in [0,2pi)
  std::vector<double> bw1, bw2;          // barycentric weights for phi1/phi2 nodes

  int size() const { return static_cast<int>(nodes.size()); }
  double surface() const;

  static std::shared_ptr<const SphereGrid> circle(int N = 256);
  static std::shared_ptr<const SphereGrid> sphere3(int n1 = 16, int n2 = 16, int n3 = 32);
  // Default grid for dimension n (cached).
  static std::shared_ptr<const SphereGrid> standard(int n, int nodes_1d = 256);

  // Interpolate node data at an arbitrary unit point: trigonometric on S^1,
  // barycentric Lagrange x trigonometric on the S^3 tensor grid.
  Mat interpolate(const std::vector<Mat>& values, const PhasePoint& unit) const;
};

Mat sphere_quadrature(const std::function<Mat(const PhasePoint&, int)>& f, const SphereGrid& g);

}  // namespace shubin
