#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shubin/component.hpp"

namespace shubin {

// Radial cutoff chi: 0 for rho <= r0, 1 for rho >= r1 (exactly), polynomial
// smoothstep of the given degree in between.
struct ExcisionProfile {
  double r0 = 0.5;
  double r1 = 1.0;
  int degree = 7;  // 3, 5 or 7

  double chi(double rho) const;
};

// Smoothed norm [p] = (r0^4 + |p|^4)^{1/4}; diagnostics only.
double smoothed_norm(const PhasePoint& p, double r0 = 0.5);

class ExactEval;  // registry.hpp

// Classical symbol: complex order m, truncated expansion a_(m-j), optional
// exact full-symbol evaluator, excision profile. When exact_eval is absent the
// full symbol IS the chi-glued truncated sum.
class ClassicalSymbol {
public:
  ClassicalSymbol() = default;
  ClassicalSymbol(Complex order, int n, int q, std::vector<HomogeneousComponent> comps,
                  ExcisionProfile chi = {}, std::shared_ptr<const ExactEval> exact = nullptr);

  Complex order() const { return order_; }
  int space_dim() const { return n_; }
  int matrix_dim() const { return q_; }
  int depth() const { return static_cast<int>(comps_.size()); }
  bool has_grid_components() const;
  const ExcisionProfile& excision() const { return chi_; }
  void set_excision(const ExcisionProfile& e) { chi_ = e; }
  const std::shared_ptr<const ExactEval>& exact() const { return exact_; }
  void set_exact(std::shared_ptr<const ExactEval> e) { exact_ = std::move(e); }

  // Component of degree order - j; zero component if j >= depth.
  const HomogeneousComponent& component(int j) const;
  const std::vector<HomogeneousComponent>& components() const { return comps_; }

  Mat eval_full(const PhasePoint& p) const;
  ClassicalSymbol scaled(Complex c) const;

  // --- factories ---------------------------------------------------------
  // (|x|^2+|xi|^2+1)/2, n=1, eigenvalues 1,2,3,...; exact evaluator attached.
  static ClassicalSymbol harmonic_oscillator();
  static ClassicalSymbol identity(int n = 1, int q = 1);
  // diag(s_1 * ho, ..., s_q * ho) with exact evaluator.
  static ClassicalSymbol diag_ho(const std::vector<double>& scales);
  // (1 + rho^2)^s with amplitude amp, binomial expansion to `depth` components.
  static ClassicalSymbol shifted_quadratic_power(double s, int depth = 9, double amp = 1.0);
  static ClassicalSymbol from_components(Complex order, int n, int q,
                                         std::vector<HomogeneousComponent> comps);

private:
  Complex order_{0.0, 0.0};
  int n_ = 1, q_ = 1;
  std::vector<HomogeneousComponent> comps_;
  ExcisionProfile chi_;
  std::shared_ptr<const ExactEval> exact_;
};

}  // namespace shubin
