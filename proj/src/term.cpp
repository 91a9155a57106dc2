#include "shubin/term.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "shubin/error.hpp"

namespace shubin {

Complex SymbolTerm::degree() const {
  int t = 0;
  for (int v : beta) t += v;
  for (int v : alpha) t += v;
  return Complex(t, 0) + 2.0 * s_exp;
}

Complex SymbolTerm::scalar_part(const PhasePoint& p) const {
  Complex v = 1.0;
  for (int i = 0; i < n(); ++i) {
    for (int k = 0; k < beta[i]; ++k) v *= p.x(i);
    for (int k = 0; k < alpha[i]; ++k) v *= p.xi(i);
  }
  if (s_exp != Complex(0.0, 0.0)) {
    double r2 = p.rho2();
    v *= std::exp(s_exp * std::log(Complex(r2, 0.0)));
  }
  return v;
}

Mat SymbolTerm::eval(const PhasePoint& p) const { return scalar_part(p) * coeff; }

void SymbolTerm::differentiate(int axis, std::vector<SymbolTerm>& out) const {
  const int i = axis % n();
  const bool wrt_x = axis < n();
  const std::vector<int>& expo = wrt_x ? beta : alpha;
  // monomial part
  if (expo[i] > 0) {
    SymbolTerm t = *this;
    auto& e = wrt_x ? t.beta : t.alpha;
    t.coeff = double(e[i]) * coeff;
    e[i] -= 1;
    out.push_back(std::move(t));
  }
  // rho^{2s} part: 2 s * v_i * rho^{2(s-1)}
  if (s_exp != Complex(0.0, 0.0)) {
    SymbolTerm t = *this;
    auto& e = wrt_x ? t.beta : t.alpha;
    e[i] += 1;
    t.coeff = (2.0 * s_exp) * coeff;
    t.s_exp = s_exp - 1.0;
    out.push_back(std::move(t));
  }
}

SymbolTerm SymbolTerm::dagger() const {
  SymbolTerm t = *this;
  t.coeff = coeff.adjoint();
  t.s_exp = std::conj(s_exp);
  return t;
}

SymbolTerm SymbolTerm::scaled(Complex c) const {
  SymbolTerm t = *this;
  t.coeff = c * coeff;
  return t;
}

SymbolTerm SymbolTerm::scalar(int n, Complex c, std::vector<int> beta, std::vector<int> alpha,
                              Complex s_exp) {
  SymbolTerm t;
  t.coeff = Mat::Constant(1, 1, c);
  if (beta.empty()) beta.assign(n, 0);
  if (alpha.empty()) alpha.assign(n, 0);
  t.beta = std::move(beta);
  t.alpha = std::move(alpha);
  t.s_exp = s_exp;
  return t;
}

SymbolTerm SymbolTerm::matrix(const Mat& c, std::vector<int> beta, std::vector<int> alpha,
                              Complex s_exp) {
  SymbolTerm t;
  t.coeff = c;
  t.beta = std::move(beta);
  t.alpha = std::move(alpha);
  t.s_exp = s_exp;
  return t;
}

std::vector<SymbolTerm> merge_terms(std::vector<SymbolTerm> terms) {
  using Key = std::tuple<std::vector<int>, std::vector<int>, long long, long long>;
  auto key_of = [](const SymbolTerm& t) {
    return Key{t.beta, t.alpha, llround(t.s_exp.real() * 1e12), llround(t.s_exp.imag() * 1e12)};
  };
  std::map<Key, SymbolTerm> acc;
  for (auto& t : terms) {
    Key k = key_of(t);
    auto it = acc.find(k);
    if (it == acc.end())
      acc.emplace(k, std::move(t));
    else
      it->second.coeff += t.coeff;
  }
  std::vector<SymbolTerm> out;
  out.reserve(acc.size());
  for (auto& [k, t] : acc)
    if (t.coeff.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(t));
  return out;
}

}  // namespace shubin
