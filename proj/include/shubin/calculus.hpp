#pragma once
#include "shubin/symbol.hpp"

namespace shubin {

// Closed sector Lambda_{theta,theta'} = { r e^{i phi} : r >= 0, theta <= phi <= theta' }.
struct Sector {
  double theta = 0.0;
  double theta_prime = 0.0;  // theta < theta_prime <= theta + 2 pi

  bool contains(Complex z) const;
  // Euclidean distance from z to the sector (0 if inside).
  double distance(Complex z) const;
  static Sector ray(double theta) { return {theta, theta}; }
};

struct SharpOpts {
  std::shared_ptr<const SphereGrid> grid;  // canonical grid for mixed products
};

// Kohn-Nirenberg composition, truncated to N components:
//   (a # b)_k = sum_{j+l+2|alpha| = k} (1/alpha!) d_xi^alpha a_(m-j) . D_x^alpha b_(mu-l).
ClassicalSymbol sharp(const ClassicalSymbol& a, const ClassicalSymbol& b, int N,
                      const SharpOpts& opts = {});
// a # a # ... # a, k factors.
ClassicalSymbol sharp_power(const ClassicalSymbol& a, int k, int N, const SharpOpts& opts = {});

// Formal adjoint: (a*)_k = sum_{j+2|alpha| = k} (1/alpha!) d_xi^alpha D_x^alpha (a_(m-j)^dagger).
ClassicalSymbol adjoint(const ClassicalSymbol& a, int N, const SharpOpts& opts = {});

// Leading component sampled on the sphere (the map s of the symbol sequence).
HomogeneousComponent principal_restrict(const ClassicalSymbol& a,
                                        std::shared_ptr<const SphereGrid> grid = nullptr);

struct Ellipticity {
  bool elliptic = false;
  double margin = 0.0;  // min over the sphere of the smallest singular value
};
Ellipticity is_elliptic(const ClassicalSymbol& a, double tol = -1.0,
                        std::shared_ptr<const SphereGrid> grid = nullptr);

struct LambdaEllipticity {
  bool elliptic = false;
  double margin = 0.0;       // min sector distance of principal eigenvalues
  double min_abs_eig = 0.0;  // min |eigenvalue| over the sphere (feeds contour eps)
};
LambdaEllipticity is_lambda_elliptic(const ClassicalSymbol& a, const Sector& sector,
                                     double tol = 1e-9,
                                     std::shared_ptr<const SphereGrid> grid = nullptr);

// Elliptic parametrix: b of order -m with a # b = 1 = b # a up to degree -N.
ClassicalSymbol parametrix(const ClassicalSymbol& a, int N, const SharpOpts& opts = {});

// Grid component holding the pointwise inverse of c with jets to order K
// (d M^{-1} = -M^{-1} (dM) M^{-1} recursion).
HomogeneousComponent component_inverse(const HomogeneousComponent& c,
                                       std::shared_ptr<const SphereGrid> grid, int K);

}  // namespace shubin
