#include "shubin/symbol.hpp"

#include <cmath>

#include "shubin/error.hpp"
#include "shubin/registry.hpp"

namespace shubin {

double ExcisionProfile::chi(double rho) const {
  require(0 < r0 && r0 < r1, "BadArgument", "excision needs 0 < r0 < r1");
  if (rho <= r0) return 0.0;
  if (rho >= r1) return 1.0;
  double t = (rho - r0) / (r1 - r0);
  switch (degree) {
    case 3:
      return t * t * (3 - 2 * t);
    case 5:
      return t * t * t * (10 + t * (-15 + 6 * t));
    case 7:
      return t * t * t * t * (35 + t * (-84 + t * (70 - 20 * t)));
    default:
      fail("BadArgument", "smoothstep degree must be 3, 5 or 7");
  }
}

double smoothed_norm(const PhasePoint& p, double r0) {
  double r2 = p.rho2();
  return std::pow(r0 * r0 * r0 * r0 + r2 * r2, 0.25);
}

ClassicalSymbol::ClassicalSymbol(Complex order, int n, int q,
                                 std::vector<HomogeneousComponent> comps, ExcisionProfile chi,
                                 std::shared_ptr<const ExactEval> exact)
    : order_(order), n_(n), q_(q), comps_(std::move(comps)), chi_(chi), exact_(std::move(exact)) {
  for (std::size_t j = 0; j < comps_.size(); ++j)
    require(std::abs(comps_[j].degree() - (order_ - double(j))) < 1e-9, "DegreeMismatch",
            "component " + std::to_string(j) + " has wrong degree");
}

bool ClassicalSymbol::has_grid_components() const {
  for (const auto& c : comps_)
    if (c.is_grid()) return true;
  return false;
}

const HomogeneousComponent& ClassicalSymbol::component(int j) const {
  static thread_local HomogeneousComponent zero_c;
  if (j >= 0 && j < depth()) return comps_[j];
  zero_c = HomogeneousComponent::zero(order_ - double(j), n_, q_);
  return zero_c;
}

Mat ClassicalSymbol::eval_full(const PhasePoint& p) const {
  if (exact_) return exact_->eval(p);
  Mat acc = Mat::Zero(q_, q_);
  double c = chi_.chi(p.norm());
  if (c == 0.0) return acc;
  for (const auto& comp : comps_)
    if (!comp.is_zero()) acc += c * comp.eval(p);
  return acc;
}

ClassicalSymbol ClassicalSymbol::scaled(Complex c) const {
  std::vector<HomogeneousComponent> comps;
  comps.reserve(comps_.size());
  for (const auto& comp : comps_) comps.push_back(comp.scaled(c));
  auto ex = exact_ ? exact_->scaled(c) : nullptr;
  return ClassicalSymbol(order_, n_, q_, std::move(comps), chi_, ex);
}

ClassicalSymbol ClassicalSymbol::harmonic_oscillator() { return diag_ho({1.0}); }

ClassicalSymbol ClassicalSymbol::identity(int n, int q) {
  std::vector<HomogeneousComponent> comps;
  comps.push_back(HomogeneousComponent::ring(
      0.0, n, q, {SymbolTerm::matrix(Mat::Identity(q, q), std::vector<int>(n, 0),
                                     std::vector<int>(n, 0), 0.0)}));
  return ClassicalSymbol(0.0, n, q, std::move(comps));
}

ClassicalSymbol ClassicalSymbol::diag_ho(const std::vector<double>& scales) {
  const int q = static_cast<int>(scales.size());
  Mat half = Mat::Zero(q, q);
  for (int i = 0; i < q; ++i) half(i, i) = 0.5 * scales[i];
  std::vector<HomogeneousComponent> comps;
  comps.push_back(
      HomogeneousComponent::ring(2.0, 1, q, {SymbolTerm::matrix(half, {0}, {0}, 1.0)}));
  comps.push_back(HomogeneousComponent::zero(1.0, 1, q));
  comps.push_back(
      HomogeneousComponent::ring(0.0, 1, q, {SymbolTerm::matrix(half, {0}, {0}, 0.0)}));
  std::vector<HoFunctionEval::Block> blocks;
  for (double s : scales) {
    HoFunctionEval::Block b;
    b.amplitude = std::abs(s);
    b.sign = s >= 0 ? 1.0 : -1.0;
    b.exponent = 1.0;
    blocks.push_back(b);
  }
  return ClassicalSymbol(2.0, 1, q, std::move(comps), {},
                         std::make_shared<HoFunctionEval>(std::move(blocks)));
}

ClassicalSymbol ClassicalSymbol::shifted_quadratic_power(double s, int depth, double amp) {
  // (1+rho^2)^s = sum_k C(s,k) rho^{2(s-k)}
  std::vector<HomogeneousComponent> comps;
  double c = 1.0;  // C(s, k)
  for (int j = 0; j < depth; ++j) {
    if (j % 2 == 0) {
      int k = j / 2;
      comps.push_back(HomogeneousComponent::ring(
          2 * s - j, 1, 1, {SymbolTerm::scalar(1, amp * c, {}, {}, Complex(s - k, 0.0))}));
      c *= (s - k) / (k + 1.0);
    } else {
      comps.push_back(HomogeneousComponent::zero(2 * s - j, 1, 1));
    }
  }
  return ClassicalSymbol(2 * s, 1, 1, std::move(comps), {},
                         std::make_shared<ShiftedQuadraticPowerEval>(s, amp));
}

ClassicalSymbol ClassicalSymbol::from_components(Complex order, int n, int q,
                                                 std::vector<HomogeneousComponent> comps) {
  return ClassicalSymbol(order, n, q, std::move(comps));
}

}  // namespace shubin
