#pragma once
#include <string>

#include "json.hpp"
#include "shubin/spectra.hpp"
#include "shubin/symbol.hpp"

namespace shubin {

// Symbol-definition schema (shared with the CLI):
// { "n": int, "q": int, "order": [re, im],
//   "components": [ { "degree": [re, im],
//                     "terms": [ { "coeff": [[[re,im],...]], "beta": [...],
//                                  "alpha": [...], "s_exp": [re, im] } ] } ],
//   "exact": optional registry tag ("ho" | "diag_ho" | "shifted_quadratic_power"),
//   "excision": { "r0": .., "r1": .., "smoothness": .. } }
ClassicalSymbol symbol_from_json(const nlohmann::json& j);
ClassicalSymbol load_symbol(const std::string& path);
nlohmann::json symbol_to_json(const ClassicalSymbol& a, const std::string& exact_tag = "");

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

// CSV sample table: re_z, im_z, re_val, im_val, uncertainty, method
void write_samples_csv(const std::string& path, const std::vector<MeromorphicSample>& samples);

}  // namespace shubin
