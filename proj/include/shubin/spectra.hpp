#pragma once
#include <string>

#include "shubin/functionals.hpp"
#include "shubin/powers.hpp"

namespace shubin {

struct MeromorphicSample {
  Complex z;
  Complex value;
  double truncation_uncertainty = 0.0;
  std::string method;  // "symbolic" or "oracle"
};

struct PoleReport {
  Complex location;                // fitted
  Complex residue;                 // fitted
  Complex predicted_location;      // (2n - j) / m
  Complex residue_formula_value;   // (1/m) Res(a_theta^{-(2n-j)/m})
  double fit_residual = 0.0;
};

struct SpectraOpts {
  int depth = 8;
  std::shared_ptr<const SphereGrid> grid;
  PowerOpts power;
  KvOpts kv;
};

// zeta_theta(a, z) = TR(a_theta^{-z}); poles can sit at z = (2n-j)/m only.
MeromorphicSample zeta(const ClassicalSymbol& a, Complex z, double theta,
                       const SpectraOpts& opts = {});

// Pole j of zeta: predicted location (2n-j)/m, residue both by the Wodzicki
// formula (1/m) Res(a^{-(2n-j)/m}) and by a 4-point pole fit of zeta samples.
PoleReport zeta_pole(const ClassicalSymbol& a, int j, double theta,
                     const SpectraOpts& opts = {});

// eta(op(a), z) = TR( a # (a#a)_theta^{-(z+1)/2} ) for self-adjoint elliptic a.
// At integer-order points the value is recovered by a least-squares Laurent
// fit over 6 samples on a circle of radius 0.1.
MeromorphicSample eta(const ClassicalSymbol& a, Complex z, double theta_up, double theta_down,
                      const SpectraOpts& opts = {});

// 2 i pi Res(Pi_{theta,theta'}(a));  zero up to numerical error by the
// vanishing of the Wodzicki trace on idempotents.
Complex eta_residue_at_zero(const ClassicalSymbol& a, double theta, double theta_prime,
                            const SpectraOpts& opts = {});

// zeta_{theta_up}(a, z) - zeta_{theta_down}(a, z). At integer z the branches
// agree identically and the returned value measures the numerical branch
// defect of the computed power symbols.
Complex zeta_branch_difference(const ClassicalSymbol& a, Complex z, double theta_up,
                               double theta_down, const SpectraOpts& opts = {});

// Least-squares Laurent fit c_{-1}/w + c_0 + c_1 w + c_2 w^2 through samples
// (w_i, f_i); returns the coefficients.
Eigen::Vector4cd laurent_fit(const std::vector<Complex>& w, const std::vector<Complex>& f);

}  // namespace shubin
