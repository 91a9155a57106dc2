#include "shubin/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "shubin/error.hpp"
#include "shubin/quadrature.hpp"
#include "shubin/registry.hpp"

namespace shubin::oracle {

Eigen::MatrixXd x_matrix(int N) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k + 1 < N; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    X(k + 1, k) = v;
    X(k, k + 1) = v;
  }
  return X;
}

Mat d_matrix(int N) {
  Mat D = Mat::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    if (k - 1 >= 0) D(k - 1, k) = Complex(0.0, -1.0) * std::sqrt(k / 2.0);
    if (k + 1 < N) D(k + 1, k) = Complex(0.0, 1.0) * std::sqrt((k + 1) / 2.0);
  }
  return D;
}

double hermite_value(int k, double x) {
  double h0 = std::pow(kPi, -0.25) * std::exp(-x * x / 2);
  if (k == 0) return h0;
  double hm = 0, hc = h0;
  for (int j = 0; j < k; ++j) {
    double hn = std::sqrt(2.0 / (j + 1)) * x * hc - std::sqrt(double(j) / (j + 1)) * hm;
    hm = hc;
    hc = hn;
  }
  return hc;
}

namespace {

struct Monomial {
  Mat coeff;
  int B = 0, A = 0;  // x^B xi^A
};

// Expand ring terms (with nonnegative integer rho-exponents) into monomials.
std::vector<Monomial> expand_polynomial(const ClassicalSymbol& a) {
  require(a.space_dim() == 1, "UnsupportedSymbol", "the oracle works at n = 1");
  std::vector<Monomial> out;
  for (const auto& comp : a.components()) {
    require(!comp.is_grid(), "UnsupportedSymbol", "oracle discretization needs ring components");
    for (const auto& t : comp.terms()) {
      require(std::abs(t.s_exp.imag()) < 1e-12 && approx_int(t.s_exp.real()) &&
                  t.s_exp.real() > -0.5,
              "UnsupportedSymbol", "non-polynomial term in oracle discretization");
      int s = static_cast<int>(std::lround(t.s_exp.real()));
      for (int k = 0; k <= s; ++k) {
        Monomial m;
        m.coeff = binom_coeff(s, k) * t.coeff;
        m.B = t.beta[0] + 2 * k;
        m.A = t.alpha[0] + 2 * (s - k);
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

Mat assemble_polynomial_matrix(const ClassicalSymbol& a, int N) {
  auto monos = expand_polynomial(a);
  const int q = a.matrix_dim();
  int maxB = 0, maxA = 0;
  for (const auto& m : monos) {
    maxB = std::max(maxB, m.B);
    maxA = std::max(maxA, m.A);
  }
  // cached powers of x and D
  std::vector<Mat> Xp(maxB + 1), Dp(maxA + 1);
  Mat X = x_matrix(N).cast<Complex>();
  Mat D = d_matrix(N);
  Xp[0] = Mat::Identity(N, N);
  for (int b = 1; b <= maxB; ++b) Xp[b] = Xp[b - 1] * X;
  Dp[0] = Mat::Identity(N, N);
  for (int al = 1; al <= maxA; ++al) Dp[al] = Dp[al - 1] * D;

  Mat M = Mat::Zero(q * N, q * N);
  for (const auto& m : monos) {
    Mat op = Xp[m.B] * Dp[m.A];
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        if (std::abs(m.coeff(i, j)) > 0.0)
          M.block(i * N, j * N, N, N) += m.coeff(i, j) * op;
  }
  return M;
}

// A(t)_{jk} = <h_j | e^{-t x^2} | h_k>, exact through Gauss-Hermite with
// Christoffel weights: A = (1/s) G W G^T, s = sqrt(1+t),
// G_j(i) = h_j(y_i/s) exp(-y_i^2 t / (2(1+t))).
Eigen::MatrixXd gauss_multiplier_matrix(double t, int N, const HermiteRule& rule) {
  const int M = static_cast<int>(rule.y.size());
  const double s = std::sqrt(1.0 + t);
  Eigen::MatrixXd G(N, M);
  for (int i = 0; i < M; ++i) {
    const double u = rule.y[i] / s;
    const double damp = std::exp(-rule.y[i] * rule.y[i] * t / (2.0 * (1.0 + t)));
    double h0 = std::pow(kPi, -0.25) * std::exp(-u * u / 2) * damp;
    double hm = 0, hc = h0;
    G(0, i) = hc;
    for (int k = 0; k + 1 < N; ++k) {
      double hn = std::sqrt(2.0 / (k + 1)) * u * hc - std::sqrt(double(k) / (k + 1)) * hm;
      hm = hc;
      hc = hn;
      G(k + 1, i) = hc;
    }
  }
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.w_tilde.data(), M) / s;
  return G * w.asDiagonal() * G.transpose();
}

// diag of op(e^{-t rho^2}) = A C with C_{lk} = i^{l-k} A_{lk}; real by parity.
Eigen::VectorXd gauss_op_diagonal(const Eigen::MatrixXd& A) {
  const int N = static_cast<int>(A.rows());
  Eigen::VectorXd d(N);
  for (int k = 0; k < N; ++k) {
    double acc = 0;
    for (int l = k % 2; l < N; l += 2) {
      int e = ((l - k) / 2) % 2;  // i^{l-k} = (-1)^{(l-k)/2}
      acc += (e == 0 ? 1.0 : -1.0) * A(k, l) * A(l, k);
    }
    d(k) = acc;
  }
  return d;
}

Mat gauss_op_matrix(const Eigen::MatrixXd& A) {
  const int N = static_cast<int>(A.rows());
  Mat C(N, N);
  const Complex I(0.0, 1.0);
  for (int l = 0; l < N; ++l)
    for (int k = 0; k < N; ++k) C(l, k) = std::pow(I, ((l - k) % 4 + 4) % 4) * A(l, k);
  return A.cast<Complex>() * C;
}

struct PowerLawFit {
  double c = 1.0, p = 1.0;
  double residual = 0.0;
};

PowerLawFit fit_power_law(const std::vector<double>& vals, int lo, int hi) {
  // vals[j-1] ~ c j^p on j in [lo, hi]
  int m = hi - lo + 1;
  Eigen::MatrixXd M(m, 2);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    int j = lo + i;
    M(i, 0) = 1.0;
    M(i, 1) = std::log(double(j));
    b(i) = std::log(std::abs(vals[j - 1]));
  }
  Eigen::Vector2d u = (M.transpose() * M).ldlt().solve(M.transpose() * b);
  PowerLawFit f;
  f.c = std::exp(u(0));
  f.p = u(1);
  f.residual = (M * u - b).cwiseAbs().maxCoeff();
  return f;
}

}  // namespace

HermiteDiscretization discretize(const ClassicalSymbol& a, int N) {
  require(a.space_dim() == 1, "UnsupportedSymbol", "the oracle works at n = 1");
  HermiteDiscretization d;
  d.N = N;
  d.q = a.matrix_dim();
  d.order = a.order();
  if (auto sqp = std::dynamic_pointer_cast<const ShiftedQuadraticPowerEval>(a.exact())) {
    d.sqp = true;
    d.sqp_s = sqp->s();
    d.sqp_amp = sqp->amp();
    d.provenance = "shifted_quadratic_power";
    return d;
  }
  d.matrix = assemble_polynomial_matrix(a, N);
  d.provenance = "polynomial";
  return d;
}

const Mat& matrix_of(HermiteDiscretization& d) {
  if (d.matrix.size() != 0 || !d.sqp) return d.matrix;
  require(d.sqp_s < 0, "UnsupportedSymbol",
          "deferred oracle matrices exist for negative shifted-quadratic powers");
  const double sigma = -d.sqp_s;
  // double-exponential nodes resolve every Hermite scale e^{-t(2k+1)}
  const auto& rule_t = exp_sinh_rule();
  const auto& gh = gauss_hermite(d.N + 24);
  Mat M = Mat::Zero(d.N, d.N);
  const double norm = d.sqp_amp / std::tgamma(sigma);
  for (std::size_t i = 0; i < rule_t.t.size(); ++i) {
    const double t = rule_t.t[i];
    const double w = norm * rule_t.w[i] * std::pow(t, sigma - 1.0) * std::exp(-t);
    if (std::abs(w) < 1e-300) continue;
    Eigen::MatrixXd A = gauss_multiplier_matrix(t, d.N, gh);
    M += w * gauss_op_matrix(A);
  }
  d.matrix = std::move(M);
  return d.matrix;
}

std::vector<Complex> eigenvalues(HermiteDiscretization& d, int count) {
  require(count <= (8 * d.N * d.q) / 10, "TruncationUntrusted",
          "requested eigenvalues exceed the trusted block");
  const Mat& M = matrix_of(d);
  std::vector<Complex> evs;
  if ((M - M.adjoint()).norm() < 1e-10 * std::max(1.0, M.norm())) {
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    for (int i = 0; i < M.rows(); ++i) evs.push_back(es.eigenvalues()(i));
  } else {
    Eigen::ComplexEigenSolver<Mat> es(M);
    for (int i = 0; i < M.rows(); ++i) evs.push_back(es.eigenvalues()(i));
  }
  std::sort(evs.begin(), evs.end(),
            [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  evs.resize(count);
  return evs;
}

Complex em_tail(double c, double p, double J, Complex z) {
  Complex s = p * z;
  Complex cz = std::exp(-z * std::log(Complex(c, 0.0)));
  double lj = std::log(J);
  auto Jp = [&](Complex e) { return std::exp(e * lj); };
  Complex tail = Jp(1.0 - s) / (s - 1.0) - 0.5 * Jp(-s) + (s / 12.0) * Jp(-s - 1.0) -
                 (s * (s + 1.0) * (s + 2.0) / 720.0) * Jp(-s - 3.0);
  return cz * tail;
}

MeromorphicSample spectral_sum(HermiteDiscretization& d, SumKind kind, Complex z, int cutoff) {
  auto evs = eigenvalues(d, (8 * d.N * d.q) / 10);
  std::vector<double> pos, neg;
  for (const auto& ev : evs) {
    require(std::abs(ev.imag()) < 1e-8 * (1.0 + std::abs(ev)), "Divergent",
            "spectral sums need a real spectrum");
    if (ev.real() > 1e-10) pos.push_back(ev.real());
    else if (ev.real() < -1e-10) neg.push_back(-ev.real());
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  auto branch = [&](const std::vector<double>& lam) -> std::pair<Complex, double> {
    if (lam.empty()) return {Complex(0, 0), 0.0};
    int J = cutoff > 0 ? cutoff : static_cast<int>(lam.size() * 0.5);
    J = std::min<int>(J, static_cast<int>(lam.size()));
    Complex acc = 0;
    for (int j = 0; j < J; ++j) acc += std::exp(-z * std::log(Complex(lam[j], 0.0)));
    PowerLawFit fit = fit_power_law(lam, std::max(1, J / 2), J);
    Complex tail = em_tail(fit.c, fit.p, J, z);
    acc += tail;
    // tail-model residual: perturb the fitted exponent by the fit residual
    Complex tail2 = em_tail(fit.c, fit.p * (1.0 + fit.residual), J, z);
    double unc = std::abs(tail - tail2) + 1e-12 * J;
    return {acc, unc};
  };
  auto [sp, up] = branch(pos);
  MeromorphicSample out;
  out.z = z;
  out.method = "oracle";
  if (kind == SumKind::Zeta) {
    require(neg.empty(), "Divergent", "zeta spectral sums need a positive spectrum");
    out.value = sp;
    out.truncation_uncertainty = up;
  } else {
    auto [sn, un] = branch(neg);
    out.value = sp - sn;
    out.truncation_uncertainty = up + un;
  }
  return out;
}

TraceResult trace(const HermiteDiscretization& d) {
  const int two_n = 2;
  require(d.order.real() < -two_n, "NotTraceClass", "trace needs order below -2n");
  TraceResult out;
  if (!d.sqp) {
    require(d.matrix.size() != 0, "NotTraceClass", "no matrix assembled");
    out.value = d.matrix.topLeftCorner(d.trusted(), d.trusted()).trace();
    out.uncertainty = 1e-6;
    return out;
  }
  const double sigma = -d.sqp_s;
  // headroom past the user basis keeps the fit window free of edge truncation
  const int Nint = d.N + 140;
  const auto& rule_t = exp_sinh_rule();
  const auto& gh = gauss_hermite(Nint + 24);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(Nint);
  const double norm = d.sqp_amp / std::tgamma(sigma);
  for (std::size_t i = 0; i < rule_t.t.size(); ++i) {
    const double t = rule_t.t[i];
    const double w = norm * rule_t.w[i] * std::pow(t, sigma - 1.0) * std::exp(-t);
    if (std::abs(w) < 1e-300) continue;
    Eigen::MatrixXd A = gauss_multiplier_matrix(t, Nint, gh);
    diag += w * gauss_op_diagonal(A);
  }
  const int K0 = d.trusted();
  double partial = diag.head(K0).sum();
  // shifted power-law model diag_k ~ sgn c (k+delta)^p absorbs the (2k+2)-type
  // spectral shift that a bare power law extrapolates poorly
  const double sgn = diag(K0 - 1) >= 0 ? 1.0 : -1.0;
  const int lo = std::max(2, K0 - 120), hi = K0;
  double best_res = std::numeric_limits<double>::infinity();
  double best_c = 1, best_p = -4, best_delta = 0;
  for (double delta : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
    const int m = hi - lo + 1;
    Eigen::MatrixXd M(m, 2);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      int k = lo + i;  // diag index k corresponds to basis state k-1 (1-based fit)
      M(i, 0) = 1.0;
      M(i, 1) = std::log(k + delta);
      b(i) = std::log(std::abs(diag(k - 1)));
    }
    Eigen::Vector2d u = (M.transpose() * M).ldlt().solve(M.transpose() * b);
    double res = (M * u - b).cwiseAbs().maxCoeff();
    if (res < best_res) {
      best_res = res;
      best_c = std::exp(u(0));
      best_p = u(1);
      best_delta = delta;
    }
  }
  // partial covers diag indices 0..K0-1, i.e. fit lattice points 1..K0
  Complex tail = em_tail(1.0 / best_c, -best_p, K0 + best_delta, 1.0);
  Complex tail2 = em_tail(1.0 / best_c, -best_p * (1.0 + best_res), K0 + best_delta, 1.0);
  out.value = partial + sgn * tail.real();
  out.uncertainty = 1.1 * std::abs(tail - tail2) + 1e-9;
  return out;
}

Eigen::VectorXcd apply_op(const ClassicalSymbol& a, const Eigen::VectorXcd& coeffs) {
  require(a.matrix_dim() == 1, "UnsupportedSymbol", "coefficient action is scalar only");
  auto monos = expand_polynomial(a);
  int maxdeg = 0;
  for (const auto& m : monos) maxdeg = std::max(maxdeg, m.B + m.A);
  const int N = static_cast<int>(coeffs.size()) + maxdeg + 2;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
  v.head(coeffs.size()) = coeffs;
  Mat X = x_matrix(N).cast<Complex>();
  Mat D = d_matrix(N);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
  for (const auto& m : monos) {
    Eigen::VectorXcd w = v;
    for (int i = 0; i < m.A; ++i) w = D * w;
    for (int i = 0; i < m.B; ++i) w = X * w;
    out += m.coeff(0, 0) * w;
  }
  return out;
}

std::vector<Complex> eval_series(const Eigen::VectorXcd& coeffs, const std::vector<double>& xs) {
  std::vector<Complex> out(xs.size(), Complex(0, 0));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int k = 0; k < coeffs.size(); ++k)
      if (std::abs(coeffs(k)) > 0) out[i] += coeffs(k) * hermite_value(k, xs[i]);
  return out;
}

}  // namespace shubin::oracle
