#include "shubin/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "shubin/error.hpp"
#include "shubin/registry.hpp"

namespace shubin {

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  require(j.is_array() && j.size() == 2, "BadSymbolFile", "complex values are [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ClassicalSymbol symbol_from_json(const nlohmann::json& j) {
  require(j.contains("n") && j.contains("order"), "BadSymbolFile",
          "symbol JSON needs 'n' and 'order'");
  const int n = j["n"].get<int>();
  const int q = j.value("q", 1);
  const Complex order = complex_from_json(j["order"]);

  std::vector<HomogeneousComponent> comps;
  if (j.contains("components")) {
    // components may be sparse; index by j = order - degree
    int max_j = 0;
    for (const auto& cj : j["components"]) {
      Complex deg = complex_from_json(cj.at("degree"));
      double idx = (order - deg).real();
      require(approx_int(idx) && idx > -0.5 && std::abs((order - deg).imag()) < 1e-9,
              "BadSymbolFile", "component degree must be order - j");
      max_j = std::max(max_j, static_cast<int>(std::lround(idx)));
    }
    for (int k = 0; k <= max_j; ++k)
      comps.push_back(HomogeneousComponent::zero(order - double(k), n, q));
    for (const auto& cj : j["components"]) {
      Complex deg = complex_from_json(cj.at("degree"));
      int idx = static_cast<int>(std::lround((order - deg).real()));
      std::vector<SymbolTerm> terms;
      for (const auto& tj : cj.value("terms", nlohmann::json::array())) {
        SymbolTerm t;
        const auto& cm = tj.at("coeff");
        require(static_cast<int>(cm.size()) == q, "BadSymbolFile", "coeff must be q x q");
        t.coeff = Mat::Zero(q, q);
        for (int r = 0; r < q; ++r)
          for (int c = 0; c < q; ++c) t.coeff(r, c) = complex_from_json(cm[r][c]);
        t.beta = tj.value("beta", std::vector<int>(n, 0));
        t.alpha = tj.value("alpha", std::vector<int>(n, 0));
        require(static_cast<int>(t.beta.size()) == n && static_cast<int>(t.alpha.size()) == n,
                "BadSymbolFile", "beta/alpha must have length n");
        t.s_exp = tj.contains("s_exp") ? complex_from_json(tj["s_exp"]) : Complex(0, 0);
        terms.push_back(std::move(t));
      }
      comps[idx] = HomogeneousComponent::ring(deg, n, q, std::move(terms));
    }
  }

  ExcisionProfile chi;
  if (j.contains("excision")) {
    const auto& e = j["excision"];
    chi.r0 = e.value("r0", 0.5);
    chi.r1 = e.value("r1", 1.0);
    chi.degree = e.value("smoothness", 7);
  }
  ClassicalSymbol sym(order, n, q, std::move(comps), chi);
  if (j.contains("exact") && j["exact"].is_string())
    attach_registered_exact(sym, j["exact"].get<std::string>());
  return sym;
}

ClassicalSymbol load_symbol(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "BadSymbolFile", "cannot open symbol file " + path);
  nlohmann::json j;
  in >> j;
  return symbol_from_json(j);
}

nlohmann::json symbol_to_json(const ClassicalSymbol& a, const std::string& exact_tag) {
  nlohmann::json j;
  j["n"] = a.space_dim();
  j["q"] = a.matrix_dim();
  j["order"] = complex_to_json(a.order());
  nlohmann::json comps = nlohmann::json::array();
  for (int k = 0; k < a.depth(); ++k) {
    const auto& c = a.component(k);
    if (c.is_zero()) continue;
    require(!c.is_grid(), "Unsupported", "grid components have no JSON form");
    nlohmann::json cj;
    cj["degree"] = complex_to_json(c.degree());
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms()) {
      nlohmann::json tj;
      nlohmann::json cm = nlohmann::json::array();
      for (int r = 0; r < a.matrix_dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int col = 0; col < a.matrix_dim(); ++col)
          row.push_back(complex_to_json(t.coeff(r, col)));
        cm.push_back(row);
      }
      tj["coeff"] = cm;
      tj["beta"] = t.beta;
      tj["alpha"] = t.alpha;
      tj["s_exp"] = complex_to_json(t.s_exp);
      terms.push_back(tj);
    }
    cj["terms"] = terms;
    comps.push_back(cj);
  }
  j["components"] = comps;
  j["excision"] = {{"r0", a.excision().r0}, {"r1", a.excision().r1},
                   {"smoothness", a.excision().degree}};
  if (!exact_tag.empty()) j["exact"] = exact_tag;
  return j;
}

void write_samples_csv(const std::string& path, const std::vector<MeromorphicSample>& samples) {
  std::ofstream out(path);
  require(out.good(), "IoError", "cannot write " + path);
  out << "re_z,im_z,re_val,im_val,uncertainty,method\n";
  char buf[256];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", s.z.real(), s.z.imag(),
                  s.value.real(), s.value.imag(), s.truncation_uncertainty, s.method.c_str());
    out << buf;
  }
}

}  // namespace shubin
