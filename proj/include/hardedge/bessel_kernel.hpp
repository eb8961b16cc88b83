#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real.hpp"
#include "specfun.hpp"

namespace hardedge {

/// Order of the Bessel kernel. The determinant theory needs |alpha| < 1;
/// evaluation is allowed up to 4 so Monte Carlo checks can use larger orders.
struct KernelParams {
  double alpha = 0.0;
};

namespace detail {

inline void check_alpha(double alpha) {
  require<DomainError>(alpha > -1.0 && alpha <= 4.0, "kernel order alpha must lie in (-1, 4]");
}

// J and J' in the working precision. Binary128 uses the ascending series,
// which stays accurate to ~1e-22 absolute for x <= 32.
template <class Real>
void bessel_real(Real alpha, Real x, Real& J, Real& dJ) {
  if constexpr (std::is_same_v<Real, double>) {
    const auto r = bessel_j(alpha, x);
    J = r.J;
    dJ = r.Jprime;
  } else {
    require<DomainError>(x > Real(0) && x <= Real(32), "extended-precision Bessel needs 0 < x <= 32");
    bessel_series<Real>(alpha, x, J, dJ);
  }
}

template <class Real>
Real kernel_diag(Real alpha, Real x, Real J, Real dJ) {
  return x / Real(2) * (dJ * dJ + (Real(1) - alpha * alpha / (x * x)) * J * J);
}

template <class Real>
Real kernel_offdiag(Real x, Real Jx, Real dJx, Real y, Real Jy, Real dJy) {
  return rmath::sqrt(x * y) * (Jx * y * dJy - Jy * x * dJx) / ((x - y) * (x + y));
}

// Leading term when both arguments sit below 1e-8.
template <class Real>
Real kernel_small(Real alpha, Real x, Real y) {
  const Real lg = rmath::lgamma(alpha + Real(1));
  return rmath::exp((alpha + Real(0.5)) * rmath::log(x * y) - alpha * rmath::log(Real(4)) -
                    Real(2) * lg) /
         (Real(2) * (alpha + Real(1)));
}

// Expansion about the midpoint u with half-gap d. The odd-in-d part of the
// numerator is kept through d^3, so the error is O(d^4).
template <class Real>
Real kernel_near_diag(Real alpha, Real x, Real y) {
  const Real u = (x + y) / Real(2), d = (x - y) / Real(2);
  Real J, J1;
  bessel_real<Real>(alpha, u, J, J1);
  const Real a2 = alpha * alpha, one = 1, two = 2;
  const Real J2 = -J1 / u - (one - a2 / (u * u)) * J;
  const Real J3 = -J2 / u + J1 / (u * u) - (one - a2 / (u * u)) * J1 - two * a2 / (u * u * u) * J;
  const Real g = u * J1;
  const Real g1 = -(u - a2 / u) * J;
  const Real g2 = -(one + a2 / (u * u)) * J - (u - a2 / u) * J1;
  const Real g3 = two * a2 / (u * u * u) * J - two * (one + a2 / (u * u)) * J1 - (u - a2 / u) * J2;
  const Real lead = two * (J1 * g - J * g1);
  const Real corr = d * d * (J3 * g / Real(3) - J * g3 / Real(3) - J2 * g1 + J1 * g2);
  return rmath::sqrt(u * u - d * d) / (Real(4) * u) * (lead + corr);
}

inline bool near_diagonal(double x, double y) { return std::fabs(x - y) <= 1e-4 * (x + y); }

template <class Real>
Real kernel_eval_real(Real alpha, Real x, Real y) {
  if (y < x) std::swap(x, y);
  if (y < Real(1e-8)) return kernel_small(alpha, x, y);
  if (x == y) {
    Real J, dJ;
    bessel_real<Real>(alpha, x, J, dJ);
    return kernel_diag(alpha, x, J, dJ);
  }
  if (near_diagonal(static_cast<double>(x), static_cast<double>(y)))
    return kernel_near_diag(alpha, x, y);
  Real Jx, dJx, Jy, dJy;
  bessel_real<Real>(alpha, x, Jx, dJx);
  bessel_real<Real>(alpha, y, Jy, dJy);
  return kernel_offdiag(x, Jx, dJx, y, Jy, dJy);
}

}  // namespace detail

/// B_alpha(x, y) for 0 < x, y <= 64.
inline double kernel_eval(const KernelParams& p, double x, double y) {
  detail::check_alpha(p.alpha);
  detail::require<DomainError>(x > 0.0 && y > 0.0, "kernel_eval needs positive arguments");
  detail::require<DomainError>(x <= 64.0 && y <= 64.0, "kernel_eval needs arguments <= 64");
  return detail::kernel_eval_real<double>(p.alpha, x, y);
}

/// Integral of B_alpha(x, x) over [0, R] with an m-point Gauss-Legendre rule.
inline double trace_on(const KernelParams& p, double R, std::size_t m) {
  detail::check_alpha(p.alpha);
  detail::require<DomainError>(R >= 0.0 && R <= 64.0, "trace_on needs 0 <= R <= 64");
  if (R == 0.0) return 0.0;
  const auto q = gauss_rule(RuleKind::Legendre, m, 0.0, R);
  return q.integrate([&](double x) {
    if (x < 1e-8) return detail::kernel_small(p.alpha, x, x);
    const auto b = bessel_j(p.alpha, x);
    return detail::kernel_diag(p.alpha, x, b.J, b.Jprime);
  });
}

}  // namespace hardedge
