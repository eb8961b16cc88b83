#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace hardedge {

using cplx = std::complex<double>;

/// u_{beta,tau}(t) = (-t/tau)^beta with the principal branch: one jump, at t = tau.
struct JumpFactor {
  double beta = 0.0;
  int tau = 1;  // +1 or -1
};

/// exp(sum_k c_k t^k) over a finite set of integer k (negative k allowed).
struct ExpLaurent {
  std::map<int, double> coeffs;
};

/// ((1 - mu t) / (1 - mu / t))^gamma, |mu| < 1, principal logarithms.
struct PowerRatio {
  double mu = 0.0;
  double gamma = 0.0;
};

using SmoothFactor = std::variant<ExpLaurent, PowerRatio>;

struct SymbolSpec {
  std::vector<JumpFactor> jump_factors;
  std::vector<SmoothFactor> smooth_factors;
  double scale = 1.0;

  bool has_jumps() const { return !jump_factors.empty(); }

  /// Value at t = e^{i theta}; at a jump point the value from the left arc end.
  cplx eval(double theta) const {
    constexpr double pi = std::numbers::pi;
    cplx logv = std::log(cplx(scale, 0.0));
    for (const auto& j : jump_factors) {
      double phi = std::fmod(theta - (j.tau == 1 ? 0.0 : pi), 2.0 * pi);
      if (phi < 0) phi += 2.0 * pi;
      logv += cplx(0.0, j.beta * (phi - pi));
    }
    const cplx t = std::polar(1.0, theta);
    for (const auto& f : smooth_factors) {
      if (const auto* e = std::get_if<ExpLaurent>(&f)) {
        for (auto [k, c] : e->coeffs) logv += c * std::polar(1.0, k * theta);
      } else {
        const auto& p = std::get<PowerRatio>(f);
        logv += p.gamma * (std::log(1.0 - p.mu * t) - std::log(1.0 - p.mu / t));
      }
    }
    return std::exp(logv);
  }
};

namespace symbols {

inline SymbolSpec jump(double beta, int tau) { return SymbolSpec{{JumpFactor{beta, tau}}, {}, 1.0}; }

/// exp(c (t + 1/t))
inline ExpLaurent exp_cosh(double c) { return ExpLaurent{{{1, c}, {-1, c}}}; }

/// exp(sum_{k>=1} c_k t^k) from c = {c_1, c_2, ...}
inline ExpLaurent plus_factor(const std::vector<double>& c) {
  ExpLaurent e;
  for (std::size_t k = 0; k < c.size(); ++k) e.coeffs[int(k) + 1] = c[k];
  return e;
}

/// f(1/t)
inline ExpLaurent tilde(const ExpLaurent& f) {
  ExpLaurent e;
  for (auto [k, c] : f.coeffs) e.coeffs[-k] = c;
  return e;
}

inline ExpLaurent inverse(const ExpLaurent& f) {
  ExpLaurent e;
  for (auto [k, c] : f.coeffs) e.coeffs[k] = -c;
  return e;
}

inline SymbolSpec product(const SymbolSpec& a, const SymbolSpec& b) {
  SymbolSpec s = a;
  s.jump_factors.insert(s.jump_factors.end(), b.jump_factors.begin(), b.jump_factors.end());
  s.smooth_factors.insert(s.smooth_factors.end(), b.smooth_factors.begin(), b.smooth_factors.end());
  s.scale *= b.scale;
  return s;
}

}  // namespace symbols

/// Fourier coefficient k of u_{beta,tau}.
inline cplx u_fourier(double beta, int tau, long k) {
  detail::require<ParameterError>(tau == 1 || tau == -1, "tau must be +1 or -1");
  const double sgn = (tau == -1 && (k % 2 != 0)) ? -1.0 : 1.0;
  if (beta == std::round(beta)) {
    const long b = std::lround(beta);
    if (k != b) return 0.0;
    return (tau == 1 && (b % 2 != 0)) ? -1.0 : 1.0;
  }
  return sgn * std::sin(std::numbers::pi * beta) / (std::numbers::pi * (beta - double(k)));
}

/// Coefficients a_k for |k| <= N.
struct FourierWindow {
  long N = 0;
  std::vector<cplx> coeffs;

  cplx at(long k) const { return coeffs[static_cast<std::size_t>(k + N)]; }

  double max_abs_imag() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::fabs(c.imag()));
    return m;
  }
};

namespace detail {

struct ArcRule {
  std::vector<double> theta, w;
};

// Composite Gauss-Legendre over the arcs between breaks, graded
// geometrically toward every break, panels no wider than 24 / (K * refine).
inline ArcRule arc_rule(const std::vector<double>& breaks, long K, int refine) {
  static const auto g = reference_jacobi_rule<double>(40, 0.0, 0.0);
  const double width = 24.0 / (double(std::max<long>(K, 8)) * refine);
  ArcRule r;
  for (std::size_t a = 0; a + 1 < breaks.size(); ++a) {
    const double lo = breaks[a], hi = breaks[a + 1];
    std::vector<double> pts{lo, hi};
    for (int j = 1; j <= 40; ++j) {
      const double h = (hi - lo) * std::ldexp(1.0, -j);
      pts.push_back(lo + h);
      pts.push_back(hi - h);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
      const double c = pts[p], d = pts[p + 1];
      const long np = static_cast<long>(std::ceil((d - c) / width));
      const double hw = (d - c) / double(np);
      for (long q = 0; q < np; ++q) {
        const double e = c + q * hw;
        for (std::size_t i = 0; i < g.t.size(); ++i) {
          r.theta.push_back(e + 0.5 * hw * (g.t[i] + 1.0));
          r.w.push_back(0.5 * hw * g.w[i]);
        }
      }
    }
  }
  return r;
}

inline std::vector<double> symbol_breaks(const SymbolSpec& s) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> b{0.0, 2.0 * pi};
  bool at_pi = false;
  for (const auto& j : s.jump_factors)
    if (j.tau == -1) at_pi = true;
  for (const auto& f : s.smooth_factors)
    if (const auto* p = std::get_if<PowerRatio>(&f))
      if (p->mu < 0) at_pi = true;  // near-singular point of the factor
  if (at_pi) b.insert(b.begin() + 1, pi);
  return b;
}

// c_k for the listed k (or every |k| <= K when ks is empty).
inline std::vector<cplx> arc_coefficients(const SymbolSpec& s, const ArcRule& r, long K,
                                          const std::vector<long>& ks) {
  const std::size_t M = r.theta.size();
  std::vector<double> gr(M), gi(M);
  for (std::size_t j = 0; j < M; ++j) {
    const cplx v = s.eval(r.theta[j]) * (r.w[j] / (2.0 * std::numbers::pi));
    gr[j] = v.real();
    gi[j] = v.imag();
  }
  if (!ks.empty()) {
    std::vector<cplx> out;
    for (long k : ks) {
      long double sr = 0.0L, si = 0.0L;
      for (std::size_t j = 0; j < M; ++j) {
        const double c = std::cos(k * r.theta[j]), sn = -std::sin(k * r.theta[j]);
        sr += gr[j] * c - gi[j] * sn;
        si += gr[j] * sn + gi[j] * c;
      }
      out.emplace_back(double(sr), double(si));
    }
    return out;
  }
  std::vector<cplx> out(2 * K + 1);
  // q_j = g_j e^{-ik theta_j} for positive k, p_j = g_j e^{+ik theta_j} for negative k
  std::vector<double> qr(gr), qi(gi), pr(gr), pi_(gi), zr(M), zi(M);
  for (std::size_t j = 0; j < M; ++j) {
    zr[j] = std::cos(r.theta[j]);
    zi[j] = -std::sin(r.theta[j]);
  }
  for (long k = 0; k <= K; ++k) {
    if (k % 64 == 0 && k > 0) {
      for (std::size_t j = 0; j < M; ++j) {
        const double c = std::cos(k * r.theta[j]), sn = std::sin(k * r.theta[j]);
        qr[j] = gr[j] * c + gi[j] * sn;
        qi[j] = gi[j] * c - gr[j] * sn;
        pr[j] = gr[j] * c - gi[j] * sn;
        pi_[j] = gi[j] * c + gr[j] * sn;
      }
    }
    // short double partial sums folded into long double keep the rounding
    // of ~10^5-term sums near 1e-15
    long double A = 0, B = 0, C = 0, D = 0;
    for (std::size_t j0 = 0; j0 < M; j0 += 256) {
      const std::size_t j1 = std::min(M, j0 + 256);
      double a = 0, b = 0, c = 0, d = 0;
      for (std::size_t j = j0; j < j1; ++j) {
        a += qr[j];
        b += qi[j];
        c += pr[j];
        d += pi_[j];
        const double nqr = qr[j] * zr[j] - qi[j] * zi[j];
        const double nqi = qr[j] * zi[j] + qi[j] * zr[j];
        const double npr = pr[j] * zr[j] + pi_[j] * zi[j];
        const double npi = pi_[j] * zr[j] - pr[j] * zi[j];
        qr[j] = nqr;
        qi[j] = nqi;
        pr[j] = npr;
        pi_[j] = npi;
      }
      A += a;
      B += b;
      C += c;
      D += d;
    }
    out[static_cast<std::size_t>(K + k)] = cplx(double(A), double(B));
    out[static_cast<std::size_t>(K - k)] = cplx(double(C), double(D));
  }
  return out;
}

}  // namespace detail

/// Coefficients of the symbol for |k| <= N by arcwise composite quadrature.
/// The panel density doubles until probe coefficients settle to 1e-13.
inline FourierWindow symbol_fourier(const SymbolSpec& s, long N) {
  for (const auto& j : s.jump_factors) {
    detail::require<ParameterError>(j.tau == 1 || j.tau == -1, "jump tau must be +1 or -1");
    detail::require<DomainError>(std::fabs(j.beta) < 1.0, "jump exponents need |beta| < 1");
  }
  for (const auto& f : s.smooth_factors)
    if (const auto* p = std::get_if<PowerRatio>(&f))
      detail::require<DomainError>(std::fabs(p->mu) < 1.0, "power-ratio factor needs |mu| < 1");
  detail::require<ParameterError>(N >= 0 && N <= (1L << 20), "window half-width out of range");
  const auto breaks = detail::symbol_breaks(s);
  const std::vector<long> probes{0, 1, std::max<long>(N / 2, 2), std::max<long>(N, 3)};
  const long Kp = std::max<long>(N, 3);
  int refine = 1;
  auto prev = detail::arc_coefficients(s, detail::arc_rule(breaks, Kp, refine), Kp, probes);
  for (;;) {
    if (refine > 16) throw AccuracyNotReached("symbol_fourier: quadrature refinement limit reached");
    const auto cur = detail::arc_coefficients(s, detail::arc_rule(breaks, Kp, 2 * refine), Kp, probes);
    double diff = 0.0, mag = 1.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
      mag = std::max(mag, std::abs(cur[i]));
    }
    if (diff <= 1e-13 * mag) break;
    prev = cur;
    refine *= 2;
  }
  FourierWindow w;
  w.N = N;
  w.coeffs = detail::arc_coefficients(s, detail::arc_rule(breaks, Kp, refine), N, {});
  return w;
}

struct TruncationPair {
  Eigen::MatrixXcd T;
  Eigen::MatrixXcd H;
};

/// T_N = (a_{j-k}), H_N = (a_{j+k+1}) for j, k < N.
inline TruncationPair toeplitz_hankel_truncation(const FourierWindow& w, long N) {
  detail::require<ParameterError>(w.N >= 2 * N, "Fourier window must have half-width >= 2N");
  TruncationPair p{Eigen::MatrixXcd(N, N), Eigen::MatrixXcd(N, N)};
  for (long j = 0; j < N; ++j)
    for (long k = 0; k < N; ++k) {
      p.T(j, k) = w.at(j - k);
      p.H(j, k) = w.at(j + k + 1);
    }
  return p;
}

inline TruncationPair toeplitz_hankel_truncation(const SymbolSpec& s, long N) {
  return toeplitz_hankel_truncation(symbol_fourier(s, 2 * N), N);
}

namespace detail {

inline bool window_is_real(const FourierWindow& w) {
  double mag = 0.0;
  for (const auto& c : w.coeffs) mag = std::max(mag, std::abs(c));
  return w.max_abs_imag() <= 1e-13 * std::max(1.0, mag);
}

template <class Mat>
Mat hankel_plus_identity(const FourierWindow& w, long N) {
  Mat M(N, N);
  using S = typename Mat::Scalar;
  for (long j = 0; j < N; ++j)
    for (long k = 0; k < N; ++k) {
      if constexpr (std::is_same_v<S, double>)
        M(j, k) = w.at(j + k + 1).real();
      else
        M(j, k) = w.at(j + k + 1);
    }
  M.diagonal().array() += S(1.0);
  return M;
}

// Leading-block determinants det(P_n (I + H_N)^{-1} P_n) for n = 1..n_max.
template <class Mat>
std::vector<cplx> leading_inverse_dets(const FourierWindow& w, long N, long n_max) {
  const Mat M = hankel_plus_identity<Mat>(w, N);
  Eigen::PartialPivLU<Mat> lu(M);
  const auto u = lu.matrixLU().diagonal().cwiseAbs();
  if (!(u.minCoeff() > 1e-300) || !std::isfinite(std::abs(u.maxCoeff())))
    throw SingularMatrixError("I + H_N is numerically singular");
  Mat E = Mat::Zero(N, n_max);
  for (long i = 0; i < n_max; ++i) E(i, i) = 1.0;
  const Mat X = lu.solve(E);
  std::vector<cplx> out;
  for (long n = 1; n <= n_max; ++n) out.push_back(cplx(X.topLeftCorner(n, n).determinant()));
  return out;
}

}  // namespace detail

/// det(I + H_N(a)) from a coefficient window.
inline cplx det_identity_plus_hankel(const FourierWindow& w, long N) {
  detail::require<ParameterError>(w.N >= 2 * N, "Fourier window must have half-width >= 2N");
  if (detail::window_is_real(w)) {
    const auto M = detail::hankel_plus_identity<Eigen::MatrixXd>(w, N);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
  }
  const auto M = detail::hankel_plus_identity<Eigen::MatrixXcd>(w, N);
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
}

struct FiniteSectionResult {
  cplx value;
  double est_error = 0.0;
  std::vector<long> N_list;
  std::vector<cplx> per_N;
  double spread = 0.0;  // max - min over per_N
};

/// det(P_n (I + H(psi))^{-1} P_n) for every n <= n_max from truncations at
/// each N in N_list. Symbols with jumps are extrapolated linearly in 1/N from
/// the last two truncations.
inline std::vector<FiniteSectionResult> finite_section_inv_dets(const SymbolSpec& s, long n_max,
                                                                const std::vector<long>& N_list,
                                                                double tol = 5e-2) {
  detail::require<ParameterError>(!N_list.empty(), "N list must be nonempty");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    detail::require<ParameterError>(N_list[i] > N_list[i - 1], "N list must increase");
  detail::require<ParameterError>(n_max >= 1 && 8 * n_max <= N_list.front(),
                                  "finite sections need N >= 8n");
  const FourierWindow w = symbol_fourier(s, 2 * N_list.back());
  const bool real = detail::window_is_real(w);
  std::vector<std::vector<cplx>> per(N_list.size());
  parallel_for(N_list.size(), [&](std::size_t i) {
    per[i] = real ? detail::leading_inverse_dets<Eigen::MatrixXd>(w, N_list[i], n_max)
                  : detail::leading_inverse_dets<Eigen::MatrixXcd>(w, N_list[i], n_max);
  });
  std::vector<FiniteSectionResult> out(n_max);
  for (long n = 1; n <= n_max; ++n) {
    auto& r = out[n - 1];
    r.N_list = N_list;
    double lo = 1e300, hi = -1e300;
    for (auto& v : per) {
      r.per_N.push_back(v[n - 1]);
      lo = std::min(lo, v[n - 1].real());
      hi = std::max(hi, v[n - 1].real());
    }
    r.spread = hi - lo;
    const cplx last = r.per_N.back();
    if (r.per_N.size() == 1) {
      r.value = last;
      continue;
    }
    const cplx prev = r.per_N[r.per_N.size() - 2];
    if (std::abs(last - prev) > tol * std::max(1.0, std::abs(last)))
      throw NonConvergenceError("finite sections disagree across truncation sizes");
    if (s.has_jumps()) {
      const double N2 = double(N_list.back()), N1 = double(N_list[N_list.size() - 2]);
      r.value = (N2 * last - N1 * prev) / (N2 - N1);
      r.est_error = std::abs(r.value - last);
    } else {
      r.value = last;
      r.est_error = std::abs(last - prev);
    }
  }
  return out;
}

inline FiniteSectionResult finite_section_inv_det(const SymbolSpec& s, long n,
                                                  const std::vector<long>& N_list,
                                                  double tol = 5e-2) {
  return finite_section_inv_dets(s, n, N_list, tol).back();
}

}  // namespace hardedge
