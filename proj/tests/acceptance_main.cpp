// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Criteria and tolerances are pinned here; the detailed checks live in the
// verify suites shared with `shubin verify`.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "shubin/verify.hpp"

using shubin::verify::Check;
using shubin::verify::Options;
using shubin::verify::run_suite;

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> needles;  // checks whose names contain one of these
  double time_budget = 0.0;          // seconds; 0 = untimed
};

bool matches(const Check& c, const Criterion& cr) {
  for (const auto& n : cr.needles)
    if (c.name.find(n) != std::string::npos) return true;
  return false;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  Options opts;  // spec defaults: 256-node circle, depth 8
  std::vector<Check> all = run_suite("all", opts);
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<Criterion> criteria = {
      {"1. harmonic-oscillator spectrum (N=400, eigenvalues 1..20 within 1e-8, < 10 s)",
       {"HO spectrum"},
       10.0},
      {"2. zeta = Riemann zeta (oracle 1e-10; symbolic 2% at z=2, 1% at z=4, < 60 s each)",
       {"oracle zeta(2)", "symbolic zeta(2)", "symbolic zeta(4)"},
       60.0},
      {"3. zeta pole structure (formula residue 1e-4, oracle fit 1e-3)",
       {"formula residue", "oracle pole fit at z = 1", "fitted location", "pole j = 1",
        "scaled HO"}},
      {"4. TR correctness (1/2 within 1e-8; oracle 1e-4; chi/p-independence 1e-9)",
       {"TR((1+rho^2)^{-2})", "oracle matrix trace", "chi-independence", "p-independence"}},
      {"5. TR-Res link (constructed family 1e-6; q#a^{-z} family 1e-4)",
       {"constructed family", "res TR(q # a^{-z})", "analytic family"}},
      {"6. idempotent residue / eta regularity (Pi#Pi 1e-6; |2 i pi Res(Pi)| 1e-6; "
       "eta fit 1e-2; symmetric eta 1e-8)",
       {"projection idempotency", "Res(Pi)", "eta pole fit", "eta(diag(HO,-HO)"}},
      {"7. calculus properties (commutator exact; Gaussian oracles 1e-10; homogeneity, "
       "associativity, Cauchy contours)",
       {"commutator", "Gaussian composition", "adjoint oracle", "homogeneity",
        "associativity", "Cauchy", "keyhole"}},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    bool pass = true;
    double worst_ratio = 0.0;
    double spent = 0.0;
    int found = 0;
    for (const auto& c : all) {
      if (!matches(c, cr)) continue;
      ++found;
      spent += c.seconds;
      pass = pass && c.pass;
      if (c.tol > 0) worst_ratio = std::max(worst_ratio, c.measured / c.tol);
    }
    if (found == 0) pass = false;
    if (cr.time_budget > 0 && spent > cr.time_budget) pass = false;
    std::printf("[%s] %s  (checks=%d, worst measured/tol=%.3g, time=%.1fs)\n",
                pass ? "PASS" : "FAIL", cr.label.c_str(), found, worst_ratio, spent);
    if (!pass) ++failures;
  }

  bool all_pass = failures == 0;
  for (const auto& c : all)
    if (!c.pass) {
      all_pass = false;
      std::printf("  failed check: %s (measured=%.3g tol=%.3g)\n", c.name.c_str(), c.measured,
                  c.tol);
    }
  bool time_ok = total < 600.0;
  std::printf("[%s] 8. full suite under 10 minutes (%.1fs, %zu checks)\n",
              (all_pass && time_ok) ? "PASS" : "FAIL", total, all.size());
  return (all_pass && time_ok) ? 0 : 1;
}
