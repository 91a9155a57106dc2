#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace shubin::verify {

struct Check {
  std::string name;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct Options {
  int sphere_nodes = 256;
  int depth = 8;
  bool quick = false;  // reduced settings for unit-test runs
};

// suite in {calculus, contour, functionals, zeta_ho, eta_regularity, all};
// "regularity" is accepted as an alias of eta_regularity.
std::vector<Check> run_suite(const std::string& suite, const Options& opts = {});

// Prints one line per check; returns the number of failures.
int print_report(const std::vector<Check>& checks, std::ostream& os);

bool known_suite(const std::string& suite);

}  // namespace shubin::verify
