#include "shubin/component.hpp"

#include <cmath>

#include "shubin/error.hpp"

namespace shubin {

static constexpr int kRingJetBudget = 1 << 20;

HomogeneousComponent HomogeneousComponent::ring(Complex degree, int n, int q,
                                                std::vector<SymbolTerm> terms) {
  HomogeneousComponent c;
  c.degree_ = degree;
  c.n_ = n;
  c.q_ = q;
  c.terms_ = merge_terms(std::move(terms));
  for (const auto& t : c.terms_)
    require(std::abs(t.degree() - degree) < 1e-9, "DegreeMismatch",
            "ring term degree disagrees with component degree");
  return c;
}

HomogeneousComponent HomogeneousComponent::zero(Complex degree, int n, int q) {
  return ring(degree, n, q, {});
}

HomogeneousComponent HomogeneousComponent::grid(Complex degree, int n, int q,
                                                std::shared_ptr<GridJets> g) {
  HomogeneousComponent c;
  c.degree_ = degree;
  c.n_ = n;
  c.q_ = q;
  c.grid_ = std::move(g);
  return c;
}

int HomogeneousComponent::jet_budget() const {
  return is_grid() ? grid_->jet_order : kRingJetBudget;
}

Mat HomogeneousComponent::eval(const PhasePoint& p) const {
  const double r = p.norm();
  require(r > 0, "ZeroPoint", "homogeneous components are defined away from the origin");
  if (!is_grid()) {
    Mat acc = Mat::Zero(q_, q_);
    for (const auto& t : terms_) acc += t.eval(p);
    return acc;
  }
  PhasePoint unit = p.scaled(1.0 / r);
  std::vector<Mat> vals(grid_->data.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = grid_->data[i][0];
  Mat v = grid_->grid->interpolate(vals, unit);
  return std::exp(degree_ * std::log(Complex(r, 0.0))) * v;
}

Mat HomogeneousComponent::value_at_node(int i) const {
  if (is_grid()) return grid_->data[i][0];
  fail("BadArgument", "value_at_node needs a grid component");
}

HomogeneousComponent HomogeneousComponent::derivative(int axis) const {
  if (!is_grid()) {
    std::vector<SymbolTerm> out;
    for (const auto& t : terms_) t.differentiate(axis, out);
    return ring(degree_ - 1.0, n_, q_, std::move(out));
  }
  require(grid_->jet_order >= 1, "JetExhausted", "grid component has no jets left");
  const auto& mit = MultiIndexTable::get(2 * n_, grid_->jet_order);
  const auto& mit_out = MultiIndexTable::get(2 * n_, grid_->jet_order - 1);
  std::vector<int> e(2 * n_, 0);
  e[axis] = 1;
  auto out = std::make_shared<GridJets>();
  out->grid = grid_->grid;
  out->jet_order = grid_->jet_order - 1;
  out->data.resize(grid_->data.size());
  for (std::size_t node = 0; node < grid_->data.size(); ++node) {
    out->data[node].resize(mit_out.size_up_to(out->jet_order));
    for (int g = 0; g < mit_out.size_up_to(out->jet_order); ++g) {
      std::vector<int> m = mit_out.mi(g);
      m[axis] += 1;
      out->data[node][g] = grid_->data[node][mit.index_of(m)];
    }
  }
  return grid(degree_ - 1.0, n_, q_, out);
}

HomogeneousComponent HomogeneousComponent::dagger() const {
  if (!is_grid()) {
    std::vector<SymbolTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.dagger());
    return ring(std::conj(degree_), n_, q_, std::move(out));
  }
  auto out = std::make_shared<GridJets>(*grid_);
  for (auto& node : out->data)
    for (auto& m : node) m = m.adjoint().eval();
  return grid(std::conj(degree_), n_, q_, out);
}

HomogeneousComponent HomogeneousComponent::scaled(Complex c) const {
  if (!is_grid()) {
    std::vector<SymbolTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.scaled(c));
    return ring(degree_, n_, q_, std::move(out));
  }
  auto out = std::make_shared<GridJets>(*grid_);
  for (auto& node : out->data)
    for (auto& m : node) m = (c * m).eval();
  return grid(degree_, n_, q_, out);
}

std::vector<std::vector<SymbolTerm>> ring_jet_terms(const std::vector<SymbolTerm>& terms, int n,
                                                    int order) {
  const auto& mit = MultiIndexTable::get(2 * n, order);
  std::vector<std::vector<SymbolTerm>> jets(mit.size_up_to(order));
  jets[0] = terms;
  for (int g = 1; g < mit.size_up_to(order); ++g) {
    // differentiate from a parent one order below
    const auto& m = mit.mi(g);
    int axis = 0;
    while (m[axis] == 0) ++axis;
    std::vector<int> parent = m;
    parent[axis] -= 1;
    const auto& src = jets[mit.index_of(parent)];
    std::vector<SymbolTerm> out;
    for (const auto& t : src) t.differentiate(axis, out);
    jets[g] = merge_terms(std::move(out));
  }
  return jets;
}

HomogeneousComponent HomogeneousComponent::to_grid(std::shared_ptr<const SphereGrid> g,
                                                   int jet_order) const {
  if (is_grid()) {
    require(grid_->grid.get() == g.get(), "GridResolution",
            "grid components must share the canonical grid");
    require(jet_order <= grid_->jet_order, "JetExhausted", "requested jets beyond stored order");
    if (jet_order == grid_->jet_order) return *this;
    const auto& mit_out = MultiIndexTable::get(2 * n_, jet_order);
    auto out = std::make_shared<GridJets>();
    out->grid = grid_->grid;
    out->jet_order = jet_order;
    out->data.resize(grid_->data.size());
    for (std::size_t i = 0; i < grid_->data.size(); ++i)
      out->data[i].assign(grid_->data[i].begin(),
                          grid_->data[i].begin() + mit_out.size_up_to(jet_order));
    return grid(degree_, n_, q_, out);
  }
  auto jets = ring_jet_terms(terms_, n_, jet_order);
  auto out = std::make_shared<GridJets>();
  out->grid = g;
  out->jet_order = jet_order;
  out->data.resize(g->size());
  for (int i = 0; i < g->size(); ++i) {
    out->data[i].resize(jets.size());
    for (std::size_t m = 0; m < jets.size(); ++m) {
      Mat acc = Mat::Zero(q_, q_);
      for (const auto& t : jets[m]) acc += t.eval(g->nodes[i]);
      out->data[i][m] = acc;
    }
  }
  return grid(degree_, n_, q_, out);
}

HomogeneousComponent HomogeneousComponent::sum(const HomogeneousComponent& a,
                                               const HomogeneousComponent& b) {
  require(std::abs(a.degree_ - b.degree_) < 1e-9, "DegreeMismatch", "component sum");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!a.is_grid() && !b.is_grid()) {
    std::vector<SymbolTerm> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return ring(a.degree_, a.n_, a.q_, std::move(t));
  }
  // at least one grid: align on the grid rep
  const HomogeneousComponent* ga = &a;
  const HomogeneousComponent* gb = &b;
  HomogeneousComponent tmp;
  std::shared_ptr<const SphereGrid> grid_ptr =
      a.is_grid() ? a.grid_->grid : b.grid_->grid;
  int K = std::min(a.jet_budget(), b.jet_budget());
  HomogeneousComponent ca = a.to_grid(grid_ptr, std::min(K, a.jet_budget()));
  HomogeneousComponent cb = b.to_grid(grid_ptr, std::min(K, b.jet_budget()));
  K = std::min(ca.grid_->jet_order, cb.grid_->jet_order);
  ca = ca.to_grid(grid_ptr, K);
  cb = cb.to_grid(grid_ptr, K);
  auto out = std::make_shared<GridJets>(*ca.grid_);
  for (std::size_t i = 0; i < out->data.size(); ++i)
    for (std::size_t m = 0; m < out->data[i].size(); ++m)
      out->data[i][m] += cb.grid_->data[i][m];
  return grid(a.degree_, a.n_, a.q_, out);
}

HomogeneousComponent HomogeneousComponent::product(const HomogeneousComponent& a,
                                                   const HomogeneousComponent& b) {
  require(a.n_ == b.n_ && a.q_ == b.q_, "DimMismatch", "component product");
  Complex deg = a.degree_ + b.degree_;
  if (a.is_zero() || b.is_zero()) return zero(deg, a.n_, a.q_);
  if (!a.is_grid() && !b.is_grid()) {
    std::vector<SymbolTerm> out;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        SymbolTerm t;
        t.coeff = ta.coeff * tb.coeff;
        t.beta = ta.beta;
        t.alpha = ta.alpha;
        for (int i = 0; i < a.n_; ++i) {
          t.beta[i] += tb.beta[i];
          t.alpha[i] += tb.alpha[i];
        }
        t.s_exp = ta.s_exp + tb.s_exp;
        out.push_back(std::move(t));
      }
    return ring(deg, a.n_, a.q_, std::move(out));
  }
  std::shared_ptr<const SphereGrid> grid_ptr =
      a.is_grid() ? a.grid_->grid : b.grid_->grid;
  if (a.is_grid() && b.is_grid())
    require(a.grid_->grid.get() == b.grid_->grid.get(), "GridResolution",
            "product of grid components on different grids");
  int K = std::min(a.jet_budget(), b.jet_budget());
  HomogeneousComponent ca = a.to_grid(grid_ptr, std::min(K, a.jet_budget()));
  HomogeneousComponent cb = b.to_grid(grid_ptr, std::min(K, b.jet_budget()));
  K = std::min(ca.grid_->jet_order, cb.grid_->jet_order);
  const auto& mit = MultiIndexTable::get(2 * a.n_, K);
  auto out = std::make_shared<GridJets>();
  out->grid = grid_ptr;
  out->jet_order = K;
  out->data.resize(grid_ptr->size());
  for (int node = 0; node < grid_ptr->size(); ++node) {
    out->data[node].resize(mit.size_up_to(K));
    const auto& da = ca.grid_->data[node];
    const auto& db = cb.grid_->data[node];
    for (int g = 0; g < mit.size_up_to(K); ++g) {
      Mat acc = Mat::Zero(a.q_, a.q_);
      for (const auto& [d, rest] : mit.splits(g)) acc += mit.binom(g, d) * da[d] * db[rest];
      out->data[node][g] = acc;
    }
  }
  return grid(deg, a.n_, a.q_, out);
}

Complex HomogeneousComponent::sphere_integral_trace(const SphereGrid& g) const {
  Complex acc = 0;
  if (is_grid()) {
    require(grid_->grid->size() == g.size(), "GridResolution", "sphere integral grid mismatch");
    for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * grid_->data[i][0].trace();
    return acc;
  }
  for (int i = 0; i < g.size(); ++i) {
    Mat v = Mat::Zero(q_, q_);
    for (const auto& t : terms_) v += t.eval(g.nodes[i]);
    acc += g.weights[i] * v.trace();
  }
  return acc;
}

double HomogeneousComponent::max_abs(const SphereGrid& g) const {
  double m = 0;
  for (int i = 0; i < g.size(); ++i) {
    Mat v = is_grid() ? grid_->data[i][0] : [&] {
      Mat a = Mat::Zero(q_, q_);
      for (const auto& t : terms_) a += t.eval(g.nodes[i]);
      return a;
    }();
    m = std::max(m, v.cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace shubin
