#pragma once
#include <memory>
#include <vector>

#include "shubin/symbol.hpp"

namespace shubin {

// Parameter-dependent parametrix of (lambda - a):
//   b_{-m}   = (lambda - a_(m))^{-1}
//   b_{-m-k} = sum_{j+2|sigma|+p = k, j<k} (1/sigma!)
//                (d_xi^sigma b_{-m-j}) (D_x^sigma a_(m-p)) b_{-m}
// together with ambient-derivative jets of every component, obtained from the
// base identity (lambda - a_(m)) b_{-m} = I and the Leibniz rule.

// Symbolic d^gamma of the ring components of `a`, evaluated per point. Built
// once and shared across lambda and sphere nodes.
class RingJetExpansion {
public:
  RingJetExpansion(const ClassicalSymbol& a, int k_comp, int max_order);
  int k_comp() const { return k_comp_; }
  int max_order() const { return max_order_; }
  int n() const { return n_; }
  int q() const { return q_; }
  Complex order() const { return order_; }

  // values[p][gamma] = d^gamma a_(m-p) at the point
  std::vector<std::vector<Mat>> eval(const PhasePoint& p) const;

private:
  int k_comp_, max_order_, n_, q_;
  Complex order_;
  std::vector<std::vector<std::vector<SymbolTerm>>> jets_;  // [comp][gamma] term lists
};

struct ResolventJet {
  PhasePoint point;
  Complex lambda;
  int k_comp = 0;
  int k_jet = 0;  // guaranteed jet order of every component
  // comp[k][gamma]: d^gamma b_{-m-k}; gamma indexes MultiIndexTable(2n, internal order T_k),
  // with T_k >= k_jet.
  std::vector<std::vector<Mat>> comp;
  std::vector<int> internal_order;
};

// Internal jet order needed for component k so that all components reach k_jet.
inline int resolvent_internal_order(int k, int k_comp, int k_jet) {
  return k_jet + (k_comp - 1 - k + 1) / 2;
}

// Order of a-jets the recursion consumes.
inline int resolvent_a_order(int k_comp, int k_jet) {
  return resolvent_internal_order(0, k_comp, k_jet) + k_comp / 2 + 1;
}

// Allocation-free evaluation workspace: fix the base point once, then sweep
// lambda along a contour. Tables are flat q x q blocks per multi-index.
class ResolventKernel {
public:
  ResolventKernel(const RingJetExpansion& aj, int k_comp, int k_jet);
  void set_point(const std::vector<std::vector<Mat>>& a_vals);
  void compute(Complex lambda);
  const Complex* comp(int k) const { return flat_[k].data(); }
  int internal_order(int k) const { return order_[k]; }
  int table_size(int k) const { return tab_[k]; }
  int q() const { return q_; }

private:
  const MultiIndexTable& mit_;
  int k_comp_, k_jet_, n_, q_, a_order_;
  std::vector<int> order_, tab_;
  std::vector<std::vector<Complex>> aflat_;
  std::vector<char> azero_;
  std::vector<std::vector<Complex>> flat_;
  std::vector<Complex> H_, tmp_;
  struct SigmaEntry {
    int so;
    int sxi_idx, sx_idx;
    Complex factor;
  };
  std::vector<SigmaEntry> sigmas_;
};

ResolventJet resolvent_jets_from(const RingJetExpansion& aj,
                                 const std::vector<std::vector<Mat>>& a_vals,
                                 const PhasePoint& p, Complex lambda, int k_comp, int k_jet);

ResolventJet resolvent_parametrix_jet(const ClassicalSymbol& a, const PhasePoint& p,
                                      Complex lambda, int k_comp, int k_jet);

}  // namespace shubin
