#pragma once
#include <functional>
#include <optional>

#include "shubin/symbol.hpp"

namespace shubin {

// Wodzicki residue: (2 pi)^{-n} int_{S^{2n-1}} Tr a_(-2n). Zero when the
// expansion has no degree -2n component (non-integer order included).
Complex wodzicki_res(const ClassicalSymbol& a, std::shared_ptr<const SphereGrid> grid = nullptr);

struct KvOpts {
  std::optional<int> p;                     // expansion depth used by the formula
  std::optional<ExcisionProfile> excision;  // internal profile for the remainder split
  std::shared_ptr<const SphereGrid> grid;
  int radial_nodes = 64;
  bool estimate_uncertainty = true;
};

struct KvResult {
  Complex value;
  double uncertainty = 0.0;
};

// Kontsevich-Vishik finite-part integral
//   TR(a) = (2 pi)^{-n} [ int_{B_1} a  -  sum_{j<p} (2n+z-j)^{-1} int_S a_(z-j)
//           + int_{B_1^c} (a - sum_{j<p} chi a_(z-j)) ],
// defined for order z outside {-2n, -2n+1, ...}. Independent of p and of the
// internal excision profile (r1 = 1) up to quadrature error.
KvResult kv_tr(const ClassicalSymbol& a, const KvOpts& opts = {});

struct PoleFit {
  Complex residue;  // c_{-1}
  Complex regular;  // c_0
};

// Fit c_{-1}/(z-z0) + c_0 + c_1 (z-z0) through TR(fam(z)) at z0 +- h, +- 2h.
// For a holomorphic family of order z + N this recovers -Res(fam(z0)).
PoleFit tr_family_pole(const std::function<ClassicalSymbol(Complex)>& fam, Complex z0 = 0.0,
                       double h = 0.02, const KvOpts& opts = {});

}  // namespace shubin
