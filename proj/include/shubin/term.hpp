#pragma once
#include <vector>

#include "shubin/types.hpp"

namespace shubin {

// One ring element  coeff * x^beta * xi^alpha * rho^{2 s_exp},  rho^2 = |x|^2+|xi|^2.
// The ring is closed under d/dx_i and d/dxi_i, which is what the sharp product
// and the parametrix recursions need.
struct SymbolTerm {
  Mat coeff;              // q x q
  std::vector<int> beta;  // x-orders, length n
  std::vector<int> alpha; // xi-orders, length n
  Complex s_exp{0.0, 0.0};

  int n() const { return static_cast<int>(beta.size()); }
  int q() const { return static_cast<int>(coeff.rows()); }
  Complex degree() const;
  Mat eval(const PhasePoint& p) const;          // requires p != 0 when s_exp has negative real part
  Complex scalar_part(const PhasePoint& p) const;

  // Append d/d(axis) of this term to out; axis < n differentiates in x,
  // axis >= n in xi. At most two terms are produced.
  void differentiate(int axis, std::vector<SymbolTerm>& out) const;

  SymbolTerm dagger() const;  // pointwise conjugate transpose of the symbol
  SymbolTerm scaled(Complex c) const;

  static SymbolTerm scalar(int n, Complex c, std::vector<int> beta, std::vector<int> alpha,
                           Complex s_exp);
  static SymbolTerm matrix(const Mat& c, std::vector<int> beta, std::vector<int> alpha,
                           Complex s_exp);
};

// Merge terms with identical (beta, alpha, s_exp) keys; drops exact zeros.
std::vector<SymbolTerm> merge_terms(std::vector<SymbolTerm> terms);

}  // namespace shubin
