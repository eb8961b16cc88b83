#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bessel_kernel.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "real.hpp"

namespace hardedge {

enum class GapMethod { Nystrom, JacobiN, Asymptotic, Series, MonteCarlo };

inline const char* method_name(GapMethod m) {
  switch (m) {
    case GapMethod::Nystrom: return "nystrom";
    case GapMethod::JacobiN: return "jacobi";
    case GapMethod::Asymptotic: return "asym";
    case GapMethod::Series: return "series";
    case GapMethod::MonteCarlo: return "mc";
  }
  return "?";
}

struct GapProbResult {
  double alpha = 0.0;
  double R = 0.0;
  GapMethod method = GapMethod::Nystrom;
  double log_p = 0.0;
  double p = 1.0;
  std::map<std::string, long long> params;
  double est_error = 0.0;
};

struct SigmaSample {
  double s = 0.0;
  double sigma = 0.0;
  double sigma_p = 0.0;
  double sigma_pp = 0.0;
};

/// Working precision of the Nystrom determinant. Auto switches to binary128
/// above kExtendedPrecisionR: 1 - lambda_max of the operator decays like
/// e^{-1.9 R}, and in double the log-determinant error already reaches 1e-10
/// at R = 8 and the resolvent becomes meaningless near R = 20.
enum class Precision { Auto, Double, Extended };
inline constexpr double kExtendedPrecisionR = 6.0;

namespace detail {

template <class Real>
struct NystromSystem {
  std::size_t m = 0;
  Real alpha = 0;
  std::vector<Real> x, sw, J, dJ;
  std::vector<Real> A;  // sw_i B(x_i, x_j) sw_j, row-major
};

// Gauss rule for the weight x^{2 alpha + 1} on [0, R]: the kernel carries the
// factor (x y)^{alpha + 1/2}, so the remaining integrand is smooth and the
// effective weights w_i / x_i^{2 alpha + 1} are applied to plain kernel values.
template <class Real>
NystromSystem<Real> build_nystrom(double alpha, double R, std::size_t m) {
  NystromSystem<Real> s;
  s.m = m;
  s.alpha = alpha;
  const auto ref = reference_jacobi_rule<Real>(m, 0.0, 2.0 * alpha + 1.0);
  const Real half = Real(R) / Real(2);
  const Real expo = Real(2) * Real(alpha) + Real(1);
  s.x.resize(m);
  s.sw.resize(m);
  s.J.resize(m);
  s.dJ.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Real onep = ref.t[i] + Real(1);
    s.x[i] = half * onep;
    s.sw[i] = rmath::sqrt(half * ref.w[i] / rmath::pow(onep, expo));
    if (s.x[i] >= Real(1e-8)) bessel_real<Real>(s.alpha, s.x[i], s.J[i], s.dJ[i]);
  }
  s.A.assign(m * m, Real(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Real b;
      const Real xi = s.x[i], xj = s.x[j];
      if (xi < Real(1e-8) || (i != j && near_diagonal(double(xi), double(xj))))
        b = kernel_eval_real<Real>(s.alpha, xi, xj);
      else if (i == j)
        b = kernel_diag(s.alpha, xi, s.J[i], s.dJ[i]);
      else if (xj < Real(1e-8))
        b = kernel_eval_real<Real>(s.alpha, xi, xj);
      else
        b = kernel_offdiag(xj, s.J[j], s.dJ[j], xi, s.J[i], s.dJ[i]);
      const Real v = s.sw[i] * b * s.sw[j];
      s.A[i * m + j] = v;
      s.A[j * m + i] = v;
    }
  }
  return s;
}

template <class Real>
DenseLU<Real> factor_identity_minus(const NystromSystem<Real>& s) {
  std::vector<Real> M(s.m * s.m);
  for (std::size_t i = 0; i < s.m * s.m; ++i) M[i] = -s.A[i];
  for (std::size_t i = 0; i < s.m; ++i) M[i * s.m + i] += Real(1);
  return DenseLU<Real>(std::move(M), s.m);
}

template <class Real>
double nystrom_log_det(double alpha, double R, std::size_t m) {
  const auto sys = build_nystrom<Real>(alpha, R, m);
  const auto lu = factor_identity_minus(sys);
  if (lu.sign() != 1)
    throw ConditioningError("Nystrom determinant changed sign: R beyond the resolvable range");
  return static_cast<double>(lu.log_abs_det());
}

template <class Real>
double nystrom_resolvent(double alpha, double R, std::size_t m) {
  const auto sys = build_nystrom<Real>(alpha, R, m);
  const auto lu = factor_identity_minus(sys);
  if (lu.sign() != 1)
    throw ConditioningError("Nystrom determinant changed sign: R beyond the resolvable range");
  const Real r = R;
  Real JR = 0, dJR = 0;
  if (r >= Real(1e-8)) bessel_real<Real>(sys.alpha, r, JR, dJR);
  std::vector<Real> k(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Real xi = sys.x[i];
    Real b;
    if (r < Real(1e-8) || xi < Real(1e-8) || near_diagonal(double(xi), R))
      b = kernel_eval_real<Real>(sys.alpha, xi, r);
    else
      b = kernel_offdiag(xi, sys.J[i], sys.dJ[i], r, JR, dJR);
    k[i] = sys.sw[i] * b;
  }
  const auto y = lu.solve(k);
  Real rho = r < Real(1e-8) ? kernel_small(sys.alpha, r, r) : kernel_diag(sys.alpha, r, JR, dJR);
  for (std::size_t i = 0; i < m; ++i) rho += k[i] * y[i];
  return static_cast<double>(rho);
}

inline bool use_extended(Precision p, double R) {
  return p == Precision::Extended || (p == Precision::Auto && R > kExtendedPrecisionR);
}

inline void check_nystrom_args(double alpha, double R, std::size_t m) {
  check_alpha(alpha);
  require<DomainError>(R >= 0.0 && R <= 30.0, "Nystrom route needs 0 <= R <= 30");
  require<ParameterError>(m >= 8 && m <= 1024, "Nystrom order m must lie in [8, 1024]");
}

inline double nystrom_log_det_auto(double alpha, double R, std::size_t m, Precision prec) {
  return use_extended(prec, R) ? nystrom_log_det<quad>(alpha, R, m)
                               : nystrom_log_det<double>(alpha, R, m);
}

}  // namespace detail

/// log det(I - B_alpha) on L^2[0, R] from an m-point Nystrom matrix. The error
/// estimate is the change against order m/2.
inline GapProbResult gap_prob_nystrom(double alpha, double R, std::size_t m,
                                      Precision prec = Precision::Auto) {
  detail::check_nystrom_args(alpha, R, m);
  GapProbResult r;
  r.alpha = alpha;
  r.R = R;
  r.method = GapMethod::Nystrom;
  r.params["m"] = static_cast<long long>(m);
  if (R == 0.0) return r;
  r.log_p = detail::nystrom_log_det_auto(alpha, R, m, prec);
  const double coarse = detail::nystrom_log_det_auto(alpha, R, m / 2, prec);
  if (r.log_p > 1e-12)
    throw ConditioningError("Nystrom determinant exceeds 1: discretization not a contraction");
  r.log_p = std::min(r.log_p, 0.0);
  r.p = std::exp(r.log_p);
  r.est_error = std::fabs(r.log_p - coarse);
  return r;
}

/// rho(R, R): diagonal of the resolvent kernel at the right endpoint.
inline double resolvent_diag(double alpha, double R, std::size_t m,
                             Precision prec = Precision::Auto) {
  detail::check_nystrom_args(alpha, R, m);
  detail::require<DomainError>(R > 0.0, "resolvent_diag needs R > 0");
  return detail::use_extended(prec, R) ? detail::nystrom_resolvent<quad>(alpha, R, m)
                                       : detail::nystrom_resolvent<double>(alpha, R, m);
}

/// Truncated Fredholm series 1 + sum_{n <= k_max} (-1)^n/n! int det[B(x_i,x_j)]
/// with every n-fold integral done by a tensor Gauss-Legendre rule.
inline double series_oracle(double alpha, double R, int k_max, std::size_t m) {
  detail::check_alpha(alpha);
  detail::require<ParameterError>(k_max >= 0 && k_max <= 4, "series_oracle supports k_max <= 4");
  detail::require<DomainError>(R >= 0.0 && R <= 30.0, "series_oracle needs 0 <= R <= 30");
  if (R == 0.0 || k_max == 0) return 1.0;
  const auto q = gauss_rule(RuleKind::Legendre, m, 0.0, R);
  Eigen::MatrixXd B(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      B(i, j) = B(j, i) = kernel_eval(KernelParams{alpha}, q.nodes[i], q.nodes[j]);
  const auto& w = q.weights;
  double total = 1.0, fact = 1.0;
  std::vector<std::size_t> idx;
  for (int n = 1; n <= k_max; ++n) {
    fact *= n;
    idx.assign(n, 0);
    double sum = 0.0;
    Eigen::MatrixXd S(n, n);
    for (;;) {
      double wp = 1.0;
      for (int a = 0; a < n; ++a) {
        wp *= w[idx[a]];
        for (int b = 0; b < n; ++b) S(a, b) = B(idx[a], idx[b]);
      }
      sum += wp * S.determinant();
      int pos = 0;
      while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
      if (pos == n) break;
    }
    total += ((n % 2) ? -1.0 : 1.0) * sum / fact;
  }
  return total;
}

namespace detail {

// Degree-5 Chebyshev least-squares fit over a window; returns value,
// first and second derivative at s0.
inline void cheb_fit_derivs(const std::vector<double>& s, const std::vector<double>& f,
                            double s0, double& d1, double& d2) {
  const int n = static_cast<int>(s.size()), deg = 5;
  const double a = s.front(), b = s.back();
  auto mapu = [&](double v) { return (2.0 * v - (a + b)) / (b - a); };
  Eigen::MatrixXd V(n, deg + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double u = mapu(s[i]);
    double t0 = 1.0, t1 = u;
    V(i, 0) = t0;
    V(i, 1) = t1;
    for (int k = 2; k <= deg; ++k) {
      const double t2 = 2.0 * u * t1 - t0;
      V(i, k) = t2;
      t0 = t1;
      t1 = t2;
    }
    y[i] = f[i];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  const double u = mapu(s0);
  double T[deg + 1], D[deg + 1], DD[deg + 1];
  T[0] = 1; D[0] = 0; DD[0] = 0;
  T[1] = u; D[1] = 1; DD[1] = 0;
  for (int k = 1; k < deg; ++k) {
    T[k + 1] = 2 * u * T[k] - T[k - 1];
    D[k + 1] = 2 * T[k] + 2 * u * D[k] - D[k - 1];
    DD[k + 1] = 4 * D[k] + 2 * u * DD[k] - DD[k - 1];
  }
  double g1 = 0, g2 = 0;
  for (int k = 0; k <= deg; ++k) {
    g1 += c[k] * D[k];
    g2 += c[k] * DD[k];
  }
  const double sc = 2.0 / (b - a);
  d1 = g1 * sc;
  d2 = g2 * sc * sc;
}

}  // namespace detail

/// sigma(s) = (sqrt(s)/2) rho(sqrt(s), sqrt(s)) on an increasing grid; the
/// derivatives come from a sliding 7-point degree-5 Chebyshev fit.
inline std::vector<SigmaSample> sigma_samples(double alpha, const std::vector<double>& s_grid,
                                              std::size_t m, Precision prec = Precision::Auto) {
  constexpr std::size_t window = 7;
  detail::require<ParameterError>(s_grid.size() >= window,
                                  "sigma_samples needs at least 7 grid points");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    detail::require<DomainError>(s_grid[i] > 0.0, "sigma_samples needs s > 0");
    if (i) detail::require<ParameterError>(s_grid[i] > s_grid[i - 1], "s grid must increase");
  }
  const std::size_t n = s_grid.size();
  std::vector<SigmaSample> out(n);
  parallel_for(n, [&](std::size_t i) {
    const double r = std::sqrt(s_grid[i]);
    out[i].s = s_grid[i];
    out[i].sigma = 0.5 * r * resolvent_diag(alpha, r, m, prec);
  });
  std::vector<double> sw(window), fw(window);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= window / 2 ? i - window / 2 : 0;
    if (lo + window > n) lo = n - window;
    for (std::size_t k = 0; k < window; ++k) {
      sw[k] = out[lo + k].s;
      fw[k] = out[lo + k].sigma;
    }
    detail::cheb_fit_derivs(sw, fw, out[i].s, out[i].sigma_p, out[i].sigma_pp);
  }
  return out;
}

}  // namespace hardedge
