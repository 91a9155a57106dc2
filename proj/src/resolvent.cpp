#include "shubin/resolvent.hpp"

#include <cmath>

#include "shubin/error.hpp"

namespace shubin {

RingJetExpansion::RingJetExpansion(const ClassicalSymbol& a, int k_comp, int max_order)
    : k_comp_(k_comp), max_order_(max_order), n_(a.space_dim()), q_(a.matrix_dim()),
      order_(a.order()) {
  jets_.resize(k_comp);
  for (int p = 0; p < k_comp; ++p) {
    const auto& c = a.component(p);
    require(!c.is_grid(), "UnsupportedSymbol",
            "the resolvent parametrix requires ring components");
    jets_[p] = ring_jet_terms(c.terms(), n_, max_order);
  }
}

std::vector<std::vector<Mat>> RingJetExpansion::eval(const PhasePoint& p) const {
  const auto& mit = MultiIndexTable::get(2 * n_, max_order_);
  std::vector<std::vector<Mat>> vals(k_comp_);
  for (int c = 0; c < k_comp_; ++c) {
    vals[c].resize(mit.size_up_to(max_order_));
    for (int g = 0; g < mit.size_up_to(max_order_); ++g) {
      Mat acc = Mat::Zero(q_, q_);
      for (const auto& t : jets_[c][g]) acc += t.eval(p);
      vals[c][g] = acc;
    }
  }
  return vals;
}

namespace {

// out += coef * A * B on flat q x q blocks
inline void mul_acc(Complex* out, const Complex* A, const Complex* B, int q, Complex coef) {
  for (int i = 0; i < q; ++i)
    for (int k = 0; k < q; ++k) {
      Complex a = coef * A[i * q + k];
      if (a == Complex(0.0, 0.0)) continue;
      const Complex* brow = B + k * q;
      Complex* orow = out + i * q;
      for (int j = 0; j < q; ++j) orow[j] += a * brow[j];
    }
}

}  // namespace

ResolventKernel::ResolventKernel(const RingJetExpansion& aj, int k_comp, int k_jet)
    : mit_(MultiIndexTable::get(2 * aj.n(),
                                std::max(resolvent_internal_order(0, k_comp, k_jet),
                                         aj.max_order()))),
      k_comp_(k_comp), k_jet_(k_jet), n_(aj.n()), q_(aj.q()), a_order_(aj.max_order()) {
  require(aj.k_comp() >= k_comp, "BadArgument", "expansion is shallower than requested");
  require(aj.max_order() >= resolvent_a_order(k_comp, k_jet), "JetBudget",
          "the ring expansion does not carry enough derivative orders");
  order_.resize(k_comp);
  tab_.resize(k_comp);
  flat_.resize(k_comp);
  for (int k = 0; k < k_comp; ++k) {
    order_[k] = resolvent_internal_order(k, k_comp, k_jet);
    tab_[k] = mit_.size_up_to(order_[k]);
    flat_[k].assign(static_cast<std::size_t>(tab_[k]) * q_ * q_, Complex(0, 0));
  }
  H_.assign(static_cast<std::size_t>(tab_[0]) * q_ * q_, Complex(0, 0));
  tmp_.assign(q_ * q_, Complex(0, 0));
  // sigma table over the xi-multiindices
  const int d = 2 * n_;
  const int smax = std::max((k_comp - 1) / 2, 0);
  const auto& sig_tab = MultiIndexTable::get(n_, smax);
  for (int si = 0; si < sig_tab.size_up_to(smax); ++si) {
    SigmaEntry e;
    e.so = sig_tab.order_of(si);
    const auto& sig = sig_tab.mi(si);
    std::vector<int> sxi(d, 0), sx(d, 0);
    for (int s = 0; s < n_; ++s) {
      sxi[n_ + s] = sig[s];
      sx[s] = sig[s];
    }
    e.sxi_idx = mit_.index_of(sxi);
    e.sx_idx = mit_.index_of(sx);
    e.factor = std::pow(Complex(0.0, -1.0), e.so) / sig_tab.factorial_of(si);
    sigmas_.push_back(e);
  }
}

void ResolventKernel::set_point(const std::vector<std::vector<Mat>>& a_vals) {
  const int qq = q_ * q_;
  const int atab = mit_.size_up_to(a_order_);
  aflat_.resize(k_comp_);
  azero_.assign(k_comp_, 1);
  for (int c = 0; c < k_comp_; ++c) {
    aflat_[c].assign(static_cast<std::size_t>(atab) * qq, Complex(0, 0));
    for (int g = 0; g < atab; ++g)
      for (int i = 0; i < q_; ++i)
        for (int j = 0; j < q_; ++j) {
          Complex v = a_vals[c][g](i, j);
          aflat_[c][static_cast<std::size_t>(g) * qq + i * q_ + j] = v;
          if (v != Complex(0.0, 0.0)) azero_[c] = 0;
        }
  }
}

void ResolventKernel::compute(Complex lambda) {
  const int qq = q_ * q_;
  // base block inverse
  Mat lam_minus = Mat::Zero(q_, q_);
  for (int i = 0; i < q_; ++i)
    for (int j = 0; j < q_; ++j)
      lam_minus(i, j) = (i == j ? lambda : Complex(0, 0)) - aflat_[0][i * q_ + j];
  Eigen::PartialPivLU<Mat> lu(lam_minus);
  Mat b0m = lu.solve(Mat::Identity(q_, q_));
  require((lam_minus * b0m - Mat::Identity(q_, q_)).norm() <
              1e-8 * std::max(1.0, b0m.norm()),
          "SingularResolvent", "lambda hits the spectrum of the principal symbol");

  auto& base = flat_[0];
  std::fill(base.begin(), base.end(), Complex(0, 0));
  for (int i = 0; i < q_; ++i)
    for (int j = 0; j < q_; ++j) base[i * q_ + j] = b0m(i, j);
  for (int g = 1; g < tab_[0]; ++g) {
    std::fill(tmp_.begin(), tmp_.end(), Complex(0, 0));
    for (const auto& [dlt, rest] : mit_.splits(g)) {
      if (dlt == 0) continue;
      mul_acc(tmp_.data(), &aflat_[0][static_cast<std::size_t>(dlt) * qq],
              &base[static_cast<std::size_t>(rest) * qq], q_, mit_.binom(g, dlt));
    }
    mul_acc(&base[static_cast<std::size_t>(g) * qq], base.data(), tmp_.data(), q_, 1.0);
  }

  for (int k = 1; k < k_comp_; ++k) {
    auto& cur = flat_[k];
    std::fill(cur.begin(), cur.begin() + static_cast<std::size_t>(tab_[k]) * qq,
              Complex(0, 0));
    for (const auto& sg : sigmas_) {
      if (2 * sg.so > k) continue;
      for (int pcomp = 0; pcomp <= k - 2 * sg.so; ++pcomp) {
        const int j = k - 2 * sg.so - pcomp;
        if (j >= k || pcomp >= k_comp_) continue;
        if (azero_[pcomp]) continue;
        // H[eta] = d^eta [ (D_x^sigma a_(m-p)) b_{-m} ]
        for (int eta = 0; eta < tab_[k]; ++eta) {
          Complex* he = &H_[static_cast<std::size_t>(eta) * qq];
          std::fill(he, he + qq, Complex(0, 0));
          for (const auto& [eps, rest] : mit_.splits(eta)) {
            const int a_idx = mit_.add(eps, sg.sx_idx);
            mul_acc(he, &aflat_[pcomp][static_cast<std::size_t>(a_idx) * qq],
                    &base[static_cast<std::size_t>(rest) * qq], q_, mit_.binom(eta, eps));
          }
        }
        const auto& bj = flat_[j];
        for (int g = 0; g < tab_[k]; ++g) {
          Complex* outg = &cur[static_cast<std::size_t>(g) * qq];
          for (const auto& [dlt, rest] : mit_.splits(g)) {
            const int b_idx = mit_.add(dlt, sg.sxi_idx);
            mul_acc(outg, &bj[static_cast<std::size_t>(b_idx) * qq],
                    &H_[static_cast<std::size_t>(rest) * qq], q_,
                    sg.factor * mit_.binom(g, dlt));
          }
        }
      }
    }
  }
}

ResolventJet resolvent_jets_from(const RingJetExpansion& aj,
                                 const std::vector<std::vector<Mat>>& a_vals,
                                 const PhasePoint& p, Complex lambda, int k_comp, int k_jet) {
  ResolventKernel kern(aj, k_comp, k_jet);
  kern.set_point(a_vals);
  kern.compute(lambda);
  ResolventJet out;
  out.point = p;
  out.lambda = lambda;
  out.k_comp = k_comp;
  out.k_jet = k_jet;
  out.comp.resize(k_comp);
  out.internal_order.resize(k_comp);
  const int q = aj.q();
  for (int k = 0; k < k_comp; ++k) {
    out.internal_order[k] = kern.internal_order(k);
    out.comp[k].resize(kern.table_size(k));
    for (int g = 0; g < kern.table_size(k); ++g) {
      Mat m(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          m(i, j) = kern.comp(k)[static_cast<std::size_t>(g) * q * q + i * q + j];
      out.comp[k][g] = std::move(m);
    }
  }
  return out;
}

ResolventJet resolvent_parametrix_jet(const ClassicalSymbol& a, const PhasePoint& p,
                                      Complex lambda, int k_comp, int k_jet) {
  RingJetExpansion aj(a, k_comp, resolvent_a_order(k_comp, k_jet));
  return resolvent_jets_from(aj, aj.eval(p), p, lambda, k_comp, k_jet);
}

}  // namespace shubin
