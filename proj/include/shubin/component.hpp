#pragma once
#include <memory>
#include <vector>

#include "shubin/grid.hpp"
#include "shubin/multiindex.hpp"
#include "shubin/term.hpp"

namespace shubin {

// Grid representation: values and derivative jets at the nodes of a shared
// sphere grid. data[node][mi] holds d^mi of the homogeneous function at the
// node, |mi| <= jet_order (mi indexes MultiIndexTable(2n, jet_order)).
struct GridJets {
  std::shared_ptr<const SphereGrid> grid;
  int jet_order = 0;
  std::vector<std::vector<Mat>> data;
};

// A component of a classical symbol, homogeneous of complex degree mu.
// Ring components are exact finite term sums; Grid components (typically
// produced by contour integration) carry sampled values and jets.
class HomogeneousComponent {
public:
  HomogeneousComponent() = default;

  static HomogeneousComponent ring(Complex degree, int n, int q, std::vector<SymbolTerm> terms);
  static HomogeneousComponent zero(Complex degree, int n, int q);
  static HomogeneousComponent grid(Complex degree, int n, int q, std::shared_ptr<GridJets> g);

  bool is_grid() const { return grid_ != nullptr; }
  bool is_zero() const { return !is_grid() && terms_.empty(); }
  Complex degree() const { return degree_; }
  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  const GridJets* grid_data() const { return grid_.get(); }
  int jet_budget() const;  // remaining derivative orders; large constant for ring

  // Homogeneous extension r^mu * value(omega); grid components interpolate.
  Mat eval(const PhasePoint& p) const;
  Mat value_at_node(int i) const;  // grid nodes (ring: evaluates exactly)

  HomogeneousComponent derivative(int axis) const;  // degree drops by one
  HomogeneousComponent dagger() const;
  HomogeneousComponent scaled(Complex c) const;

  // Sample (with exact jets for ring inputs) onto a grid.
  HomogeneousComponent to_grid(std::shared_ptr<const SphereGrid> g, int jet_order) const;

  static HomogeneousComponent sum(const HomogeneousComponent& a, const HomogeneousComponent& b);
  // Pointwise matrix product a(x,xi) * b(x,xi); grid results keep min jet order.
  static HomogeneousComponent product(const HomogeneousComponent& a,
                                      const HomogeneousComponent& b);

  Complex sphere_integral_trace(const SphereGrid& g) const;
  double max_abs(const SphereGrid& g) const;

private:
  Complex degree_{0.0, 0.0};
  int n_ = 1, q_ = 1;
  std::vector<SymbolTerm> terms_;
  std::shared_ptr<GridJets> grid_;
};

// Exact jets of a ring term sum: result[mi] is the term list of d^mi applied
// to `terms`, mi indexing MultiIndexTable(2n, order).
std::vector<std::vector<SymbolTerm>> ring_jet_terms(const std::vector<SymbolTerm>& terms, int n,
                                                    int order);

}  // namespace shubin
