#pragma once
#include "shubin/spectra.hpp"
#include "shubin/symbol.hpp"

namespace shubin::oracle {

// Finite Hermite-basis truncation of op(a) at n = 1, Kohn-Nirenberg
// quantization (all x factors left of all D factors). The trusted block is
// the lowest 80% of basis indices; truncation pollutes the top edge.
struct HermiteDiscretization {
  int N = 400;
  int q = 1;
  Complex order{0.0, 0.0};
  Mat matrix;  // (qN) x (qN); empty for the deferred shifted-quadratic path
  bool sqp = false;
  double sqp_s = 0.0, sqp_amp = 1.0;
  std::string provenance;

  int trusted() const { return (8 * N) / 10; }
};

// x and D = -i d/dx in the L^2-normalized Hermite function basis (exactly
// tridiagonal).
Eigen::MatrixXd x_matrix(int N);
Mat d_matrix(int N);

double hermite_value(int k, double x);

HermiteDiscretization discretize(const ClassicalSymbol& a, int N);
// Dense matrix of the discretization (assembles the deferred path on demand).
const Mat& matrix_of(HermiteDiscretization& d);

// Lowest-|lambda| eigenvalues; count must stay within the trusted block.
std::vector<Complex> eigenvalues(HermiteDiscretization& d, int count);

enum class SumKind { Zeta, Eta };

// Spectral sum over computed eigenvalues plus an Euler-Maclaurin tail on a
// fitted power law lambda_j ~ c j^p; the same expression continues the sum
// analytically below the convergence abscissa.
MeromorphicSample spectral_sum(HermiteDiscretization& d, SumKind kind, Complex z, int cutoff = 0);

struct TraceResult {
  Complex value;
  double uncertainty = 0.0;
};
// Trace over the trusted block plus a power-law tail estimate. Requires
// Re(order) < -2n (trace class).
TraceResult trace(const HermiteDiscretization& d);

// Hermite-coefficient action of op(a) for polynomial scalar symbols; used by
// the composition/adjoint function-space checks.
Eigen::VectorXcd apply_op(const ClassicalSymbol& a, const Eigen::VectorXcd& coeffs);
std::vector<Complex> eval_series(const Eigen::VectorXcd& coeffs, const std::vector<double>& xs);

// Euler-Maclaurin continuation of sum over j = J+1, J+2, ... of (c j^p)^{-z};
// J may be non-integral (shifted lattices).
Complex em_tail(double c, double p, double J, Complex z);

}  // namespace shubin::oracle
