#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "fredholm.hpp"
#include "linalg.hpp"
#include "orthopoly.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace hardedge {

/// Orthonormal Jacobi recurrence for (1-x)^a (1+x)^b on [-1,1]:
/// x p_k = off_diag[k] p_{k+1} + diag[k] p_k + off_diag[k-1] p_{k-1}.
struct JacobiRecurrence {
  double a_exp = 0.0;
  double b_exp = 0.0;
  std::size_t n = 0;
  std::vector<double> off_diag;  // off_diag[k] couples p_k and p_{k+1}
  std::vector<double> diag;
  double norm0 = 0.0;
};

inline JacobiRecurrence jacobi_recurrence(double a_exp, double b_exp, std::size_t n) {
  detail::require<ParameterError>(n >= 1, "jacobi_recurrence needs n >= 1");
  const auto c = detail::jacobi_coeffs<long double>(a_exp, b_exp, n);
  JacobiRecurrence r{a_exp, b_exp, n, std::vector<double>(n), std::vector<double>(n),
                     static_cast<double>(c.norm0)};
  for (std::size_t k = 0; k < n; ++k) {
    r.diag[k] = static_cast<double>(c.diag[k]);
    r.off_diag[k] = static_cast<double>(c.off[k + 1]);
  }
  return r;
}

struct JacobiRouteParams {
  std::size_t n = 0;
  double R = 0.0;
  double rho_n = 1.0;
  double mu_n = 1.0;
};

inline JacobiRouteParams jacobi_route_params(std::size_t n, double R) {
  detail::require<ParameterError>(n >= 1 && 2.0 * n > R, "Jacobi route needs 2n > R");
  detail::require<DomainError>(R >= 0.0, "Jacobi route needs R >= 0");
  JacobiRouteParams p{n, R, 1.0 - R * R / (4.0 * n * n), 0.0};
  // 1 - rho = (R/2n)^2 exactly, so the square root is taken without cancellation
  const double sq = R / (2.0 * n);
  p.mu_n = (2.0 - p.rho_n - 2.0 * sq) / p.rho_n;
  return p;
}

namespace detail {

// Tail quadrature on [1 - delta, 1] for (1-x)^alpha (1+x)^beta, returned as
// distances u = 1 - x and full weights.
struct TailRule {
  std::vector<long double> u, w;
};

inline TailRule tail_rule(double alpha, double beta, long double delta, std::size_t m) {
  const auto ref = reference_jacobi_rule<long double>(m, alpha, 0.0);
  TailRule t{std::vector<long double>(m), std::vector<long double>(m)};
  const long double scale = std::pow(delta / 2.0L, (long double)alpha + 1.0L);
  for (std::size_t i = 0; i < m; ++i) {
    t.u[i] = delta * (1.0L - ref.t[i]) / 2.0L;
    t.w[i] = scale * ref.w[i] * std::pow(2.0L - t.u[i], (long double)beta);
  }
  return t;
}

// det(I - M) with M_jk = sum_i w_i p_j(x_i) p_k(x_i), through the m x m
// matrix I - W^{1/2} V V^T W^{1/2}.
inline double khat_log_det(double alpha, double beta, std::size_t n, double R, std::size_t m) {
  const long double delta = (long double)R * R / (2.0L * n * n);
  const auto tr = tail_rule(alpha, beta, delta, m);
  const auto c = jacobi_coeffs<long double>(alpha, beta, n);
  std::vector<long double> G(m * m, 0.0L), pm1(m, 0.0L), p(m), x(m);
  const long double p0 = 1.0L / std::sqrt(c.norm0);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = 1.0L - tr.u[i];
    p[i] = p0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const long double pi = p[i];
      long double* gi = &G[i * m];
      for (std::size_t j = 0; j <= i; ++j) gi[j] += pi * p[j];
    }
    if (k + 1 == n) break;
    for (std::size_t i = 0; i < m; ++i) {
      // (x - diag) written via u to keep digits when x is close to 1
      const long double next = ((x[i] - c.diag[k]) * p[i] - c.off[k] * pm1[i]) / c.off[k + 1];
      pm1[i] = p[i];
      p[i] = next;
    }
  }
  std::vector<long double> A(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const long double v = -std::sqrt(tr.w[i] * tr.w[j]) * G[i * m + j];
      A[i * m + j] = A[j * m + i] = v;
    }
  for (std::size_t i = 0; i < m; ++i) A[i * m + i] += 1.0L;
  DenseLU<long double> lu(std::move(A), m);
  if (lu.sign() != 1) throw ConditioningError("Jacobi Gram determinant is not positive");
  return static_cast<double>(lu.log_abs_det());
}

}  // namespace detail

/// det(I - K_hat_n) on L^2[0, R] from the Gram reduction over the tail
/// [1 - R^2/(2n^2), 1]; cost O(n m_tail^2).
inline GapProbResult khat_det(double alpha, double beta, std::size_t n, double R,
                              std::size_t m_tail = 80) {
  detail::require<DomainError>(alpha > -1.0 && beta > -1.0, "Jacobi exponents must exceed -1");
  detail::require<ParameterError>(m_tail >= 2, "m_tail must be at least 2");
  jacobi_route_params(n, R);
  GapProbResult r;
  r.alpha = alpha;
  r.R = R;
  r.method = GapMethod::JacobiN;
  r.params["n"] = static_cast<long long>(n);
  r.params["m_tail"] = static_cast<long long>(m_tail);
  if (R == 0.0) return r;
  r.log_p = detail::khat_log_det(alpha, beta, n, R, m_tail);
  r.p = std::exp(r.log_p);
  r.est_error = std::fabs(r.log_p - detail::khat_log_det(alpha, beta, n, R, m_tail / 2));
  return r;
}

struct HardEdgeScan {
  std::vector<GapProbResult> results;
  std::vector<double> abs_errors;  // |log p(n) - log p Nystrom|
  double reference_log_p = 0.0;
  double fitted_order = 0.0;  // slope of -log|err| against log n
};

inline HardEdgeScan hard_edge_scan(double alpha, double beta, double R,
                                   const std::vector<std::size_t>& n_list,
                                   std::size_t m_tail = 80, std::size_t m_nystrom = 200) {
  HardEdgeScan s;
  s.results.resize(n_list.size());
  parallel_for(n_list.size(),
               [&](std::size_t i) { s.results[i] = khat_det(alpha, beta, n_list[i], R, m_tail); });
  s.reference_log_p = gap_prob_nystrom(alpha, R, m_nystrom).log_p;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double e = std::fabs(s.results[i].log_p - s.reference_log_p);
    s.abs_errors.push_back(e);
    if (e > 0.0) {
      const double lx = std::log(double(n_list[i])), ly = std::log(e);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
  }
  if (cnt >= 2) s.fitted_order = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return s;
}

}  // namespace hardedge
