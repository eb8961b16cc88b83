#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real.hpp"

namespace hardedge {

/// ln Gamma(x) for x > 0.
inline double gamma_ln(double x) {
  detail::require<DomainError>(x > 0.0 && std::isfinite(x), "gamma_ln needs x > 0");
  return std::lgamma(x);
}

namespace detail {

// Hurwitz zeta(s, a) for s >= 2, a >= 16 by Euler-Maclaurin at the origin a.
inline double hurwitz_zeta_em(double s, double a) {
  static constexpr double bern[] = {1.0 / 6,       -1.0 / 30,   1.0 / 42,       -1.0 / 30,
                                    5.0 / 66,      -691.0 / 2730, 7.0 / 6,      -3617.0 / 510,
                                    43867.0 / 798, -174611.0 / 330};
  double sum = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;              // s (s+1) ... (s+2p-2)
  double apow = std::pow(a, -s - 1.0);
  double fact = 2.0;              // (2p)!
  for (int p = 1; p <= 10; ++p) {
    const double term = bern[p - 1] / fact * rising * apow;
    sum += term;
    if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
    rising *= (s + 2 * p - 1) * (s + 2 * p);
    apow /= a * a;
    fact *= (2 * p + 1) * (2 * p + 2);
  }
  return sum;
}

// ln G(1+z) from the Weierstrass product truncated after K factors; the
// remaining factors are summed through their 1/k expansion.
inline double barnes_product_ln(double z, int K) {
  constexpr double euler_gamma = 0.57721566490153286061;
  double s = 0.5 * z * std::log(2.0 * std::numbers::pi) - 0.5 * (z + (1.0 + euler_gamma) * z * z);
  double acc = 0.0, comp = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double kk = k;
    const double f = kk * std::log1p(z / kk) - z + z * z / (2.0 * kk);
    const double y = f - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  double tail = 0.0, zj = z * z * z;
  for (int j = 3; j < 80; ++j) {
    const double term = ((j % 2) ? 1.0 : -1.0) * zj / j * hurwitz_zeta_em(j - 1.0, K + 1.0);
    tail += term;
    if (std::fabs(term) < 1e-19) break;
    zj *= z;
  }
  return s + acc + tail;
}

}  // namespace detail

/// ln G(1+z) for 1+z in (0, 6).
inline double barnes_g_ln(double one_plus_z) {
  detail::require<DomainError>(one_plus_z > 0.0 && one_plus_z < 6.0,
                               "barnes_g_ln supports arguments in (0, 6)");
  const double z = one_plus_z - 1.0;
  if (z == 0.0) return 0.0;
  int K = 64;
  double prev = detail::barnes_product_ln(z, K);
  for (int it = 0; it < 12; ++it) {
    K *= 2;
    const double cur = detail::barnes_product_ln(z, K);
    if (std::fabs(cur - prev) <= 1e-13 * std::max(1.0, std::fabs(cur))) return cur;
    prev = cur;
  }
  throw NonConvergenceError("barnes_g_ln: truncated product did not settle");
}

struct BesselJ {
  double J;
  double Jprime;
};

namespace detail {

// Ascending series for J_alpha and J'_alpha in Real, Neumaier-compensated.
template <class Real>
void bessel_series(Real alpha, Real x, Real& J, Real& dJ) {
  const Real h = x / Real(2);
  const Real q = -h * h;
  Real term = rmath::exp(-rmath::lgamma(alpha + Real(1)));
  Real s = 0, cs = 0, d = 0, cd = 0;
  auto add = [](Real& acc, Real& c, Real v) {
    const Real t = acc + v;
    if (rmath::abs(acc) >= rmath::abs(v))
      c += (acc - t) + v;
    else
      c += (v - t) + acc;
    acc = t;
  };
  const Real eps = Real(rmath::epsilon<Real>());
  for (int k = 0; k < 400; ++k) {
    add(s, cs, term);
    add(d, cd, (Real(2 * k) + alpha) * term);
    const Real next = term * q / (Real(k + 1) * (Real(k + 1) + alpha));
    if (Real(k) > h && rmath::abs(next) <= eps * Real(1e-3) * rmath::abs(s + cs)) break;
    term = next;
  }
  s += cs;
  d += cd;
  const Real ha = rmath::pow(h, alpha);
  J = ha * s;
  dJ = ha * d / x;
}

inline const ReferenceRule<double>& gl20() {
  static const ReferenceRule<double> r = reference_jacobi_rule<double>(20, 0.0, 0.0);
  return r;
}

// Composite Gauss-Legendre on [lo,hi] with `panels` equal panels for two
// integrands at once.
template <class F>
void composite_pair(F&& f, double lo, double hi, int panels, double& r1, double& r2) {
  const auto& g = gl20();
  const double hw = (hi - lo) / panels;
  r1 = r2 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * hw;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      double v1, v2;
      f(a + 0.5 * hw * (g.t[i] + 1.0), v1, v2);
      s1 += g.w[i] * v1;
      s2 += g.w[i] * v2;
    }
    r1 += 0.5 * hw * s1;
    r2 += 0.5 * hw * s2;
  }
}

// Real-order integral representation, used for 12 < x <= 64.
inline BesselJ bessel_schlafli(double nu, double x) {
  const double pi = std::numbers::pi;
  auto osc = [&](double th, double& v1, double& v2) {
    const double ph = nu * th - x * std::sin(th);
    v1 = std::cos(ph);
    v2 = std::sin(th) * std::sin(ph);
  };
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  int panels = 8;
  double p1 = 0, p2 = 0;
  composite_pair(osc, 0.0, pi, panels, p1, p2);
  for (;;) {
    panels *= 2;
    composite_pair(osc, 0.0, pi, panels, a1, a2);
    if (std::fabs(a1 - p1) < 1e-15 && std::fabs(a2 - p2) < 1e-15) break;
    if (panels > 4096) throw NonConvergenceError("bessel_j: oscillatory integral did not settle");
    p1 = a1;
    p2 = a2;
  }
  const double snp = std::sin(nu * pi);
  if (snp != 0.0) {
    // e^{-x sinh t - nu t} is below 1e-18 of its peak once x sinh t + nu t > 42
    double T = std::asinh(48.0 / x);
    while (x * std::sinh(T) + nu * T < 45.0) T *= 1.5;
    auto decay = [&](double t, double& v1, double& v2) {
      const double e = std::exp(-x * std::sinh(t) - nu * t);
      v1 = e;
      v2 = std::sinh(t) * e;
    };
    panels = 4;
    composite_pair(decay, 0.0, T, panels, p1, p2);
    for (;;) {
      panels *= 2;
      composite_pair(decay, 0.0, T, panels, b1, b2);
      if (std::fabs(b1 - p1) < 1e-16 && std::fabs(b2 - p2) < 1e-16) break;
      if (panels > 4096) throw NonConvergenceError("bessel_j: decaying integral did not settle");
      p1 = b1;
      p2 = b2;
    }
  }
  return {(a1 - snp * b1) / pi, (a2 + snp * b2) / pi};
}

}  // namespace detail

/// J_alpha(x) and its derivative for alpha in (-1, 4], 0 <= x <= 64.
inline BesselJ bessel_j(double alpha, double x) {
  detail::require<DomainError>(alpha > -1.0 && alpha <= 4.0, "bessel_j needs alpha in (-1, 4]");
  detail::require<DomainError>(x >= 0.0 && x <= 64.0, "bessel_j needs 0 <= x <= 64");
  if (x == 0.0) {
    if (alpha == 0.0) return {1.0, 0.0};
    detail::require<DomainError>(alpha > 0.0, "bessel_j: J_alpha(0) is infinite for alpha < 0");
    const double inf = std::numeric_limits<double>::infinity();
    if (alpha < 1.0) return {0.0, inf};
    return {0.0, alpha == 1.0 ? 0.5 : 0.0};
  }
  if (x <= 12.0) {
    long double J, dJ;
    detail::bessel_series<long double>(alpha, x, J, dJ);
    return {static_cast<double>(J), static_cast<double>(dJ)};
  }
  return detail::bessel_schlafli(alpha, x);
}

}  // namespace hardedge
