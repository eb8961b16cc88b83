#pragma once

// Three-term recurrence of the orthonormal Jacobi polynomials for the weight
// (1-t)^a (1+t)^b on [-1,1].

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace hardedge::detail {

template <class Real>
struct JacobiCoeffs {
  Real a, b;
  std::vector<Real> diag;  // diag[k], k = 0..n-1
  std::vector<Real> off;   // off[k] couples p_{k-1} and p_k, k = 1..n (off[0] unused)
  Real norm0;              // integral of the weight
};

template <class Real>
JacobiCoeffs<Real> jacobi_coeffs(double a_d, double b_d, std::size_t n) {
  require<ParameterError>(a_d > -1.0 && b_d > -1.0, "Jacobi exponents must exceed -1");
  const Real a = a_d, b = b_d, one = 1, two = 2, four = 4;
  JacobiCoeffs<Real> c{a, b, std::vector<Real>(n), std::vector<Real>(n + 1), Real(0)};
  const Real ab = a + b;
  for (std::size_t k = 0; k < n; ++k) {
    const Real s = two * Real(k) + ab;
    if (k == 0)
      c.diag[k] = (b - a) / (ab + two);
    else
      c.diag[k] = (b * b - a * a) / (s * (s + two));
  }
  c.off[0] = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Real kk = Real(k);
    const Real s = two * kk + ab;
    Real v2;
    if (k == 1)
      v2 = four * (one + a) * (one + b) / ((two + ab) * (two + ab) * (Real(3) + ab));
    else
      v2 = four * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + one) * (s - one));
    c.off[k] = rmath::sqrt(v2);
  }
  c.norm0 = rmath::exp((ab + one) * rmath::log(two) + rmath::lgamma(a + one) +
                       rmath::lgamma(b + one) - rmath::lgamma(ab + two));
  return c;
}

// Values p_0..p_{n-1} at t.
template <class Real>
void jacobi_values(const JacobiCoeffs<Real>& c, Real t, std::size_t n, Real* out) {
  if (n == 0) return;
  Real pm1 = 0, p = Real(1) / rmath::sqrt(c.norm0);
  out[0] = p;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Real next = ((t - c.diag[k]) * p - c.off[k] * pm1) / c.off[k + 1];
    pm1 = p;
    p = next;
    out[k + 1] = p;
  }
}

// p_n(t) and its derivative, with p_{n-1}(t) as a by-product.
template <class Real>
void jacobi_eval_n(const JacobiCoeffs<Real>& c, Real t, std::size_t n, Real& pn, Real& dpn,
                   Real& pnm1) {
  Real pm1 = 0, p = Real(1) / rmath::sqrt(c.norm0);
  Real dm1 = 0, d = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Real next = ((t - c.diag[k]) * p - c.off[k] * pm1) / c.off[k + 1];
    const Real dnext = (p + (t - c.diag[k]) * d - c.off[k] * dm1) / c.off[k + 1];
    pm1 = p;
    p = next;
    dm1 = d;
    d = dnext;
  }
  pn = p;
  dpn = d;
  pnm1 = pm1;
}

}  // namespace hardedge::detail
