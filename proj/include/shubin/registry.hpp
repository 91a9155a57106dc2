#pragma once
#include <memory>
#include <string>
#include <vector>

#include "shubin/symbol.hpp"

namespace shubin {

// Exact full-symbol evaluators for registered symbols. Only the harmonic
// oscillator family knows how to take operator powers (Mehler semigroup symbol
// plus a Mellin integral); everything else evaluates pointwise at best.
class ExactEval {
public:
  virtual ~ExactEval() = default;
  virtual int q() const = 0;
  virtual Mat eval(const PhasePoint& p) const = 0;
  // Ambient derivative d_x^beta d_xi^alpha of the full symbol.
  virtual Mat eval_deriv(const PhasePoint& p, const std::vector<int>& beta,
                         const std::vector<int>& alpha) const = 0;
  // Exact evaluator for the operator power a_theta^z; nullptr if unsupported.
  virtual std::shared_ptr<const ExactEval> power(Complex z, double theta) const { return nullptr; }
  // Exact evaluator for op(this)op(rhs) when both are functions of the same
  // commuting generator; nullptr if unsupported.
  virtual std::shared_ptr<const ExactEval> compose(const ExactEval& rhs) const { return nullptr; }
  virtual std::shared_ptr<const ExactEval> scaled(Complex c) const { return nullptr; }
};

// KN symbol of H^{-w} (Re w > 0) and its x/xi-derivatives, where H = op(ho)
// with spectrum {1, 2, 3, ...}. Derived from the Mehler kernel:
//   sigma(e^{-tH}) = e^{-t/2} sech(t)^{1/2}
//                    exp(-tanh(t) (x^2+xi^2)/2 + i (sech t - 1) x xi).
Complex ho_power_symbol(Complex w_neg_exponent, const PhasePoint& p, int dx = 0, int dxi = 0);
// KN symbol of H^u for arbitrary complex u (reduction H^k * H^{u-k} for
// Re u >= 0, finite Kohn-Nirenberg sum).
Complex ho_symbol_general(Complex u, const PhasePoint& p, int dx = 0, int dxi = 0);

// Diagonal family: block i is scale_i * H^{exp_i} times a branch phase.
class HoFunctionEval : public ExactEval, public std::enable_shared_from_this<HoFunctionEval> {
public:
  struct Block {
    Complex amplitude{1.0, 0.0};  // includes branch phases collected by powers
    double sign = 1.0;            // sign of the spectrum direction (scale sign)
    Complex exponent{1.0, 0.0};   // power of H
  };
  explicit HoFunctionEval(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  int q() const override { return static_cast<int>(blocks_.size()); }
  Mat eval(const PhasePoint& p) const override;
  Mat eval_deriv(const PhasePoint& p, const std::vector<int>& beta,
                 const std::vector<int>& alpha) const override;
  std::shared_ptr<const ExactEval> power(Complex z, double theta) const override;
  std::shared_ptr<const ExactEval> compose(const ExactEval& rhs) const override;
  std::shared_ptr<const ExactEval> scaled(Complex c) const override;
  const std::vector<Block>& blocks() const { return blocks_; }

private:
  std::vector<Block> blocks_;
};

// Pointwise amp * (1 + rho^2)^s.
class ShiftedQuadraticPowerEval : public ExactEval {
public:
  ShiftedQuadraticPowerEval(double s, double amp = 1.0) : s_(s), amp_(amp) {}
  int q() const override { return 1; }
  Mat eval(const PhasePoint& p) const override;
  Mat eval_deriv(const PhasePoint& p, const std::vector<int>& beta,
                 const std::vector<int>& alpha) const override;
  std::shared_ptr<const ExactEval> scaled(Complex c) const override;
  double s() const { return s_; }
  double amp() const { return amp_; }

private:
  double s_, amp_;
};

// Wire a registry tag from the symbol-definition JSON onto a parsed symbol.
// Recognized tags: "ho", "diag_ho", "shifted_quadratic_power".
void attach_registered_exact(ClassicalSymbol& sym, const std::string& tag);

}  // namespace shubin
