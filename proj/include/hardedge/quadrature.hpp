#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "orthopoly.hpp"
#include "real.hpp"

namespace hardedge {

enum class RuleKind { Legendre, JacobiWeighted };

/// Exponents of the weight (hi-x)^a (x-lo)^b.
struct JacobiExponents {
  double a = 0.0;
  double b = 0.0;
};

struct QuadratureRule {
  RuleKind kind = RuleKind::Legendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = -1.0;
  double hi = 1.0;
  std::optional<JacobiExponents> jacobi_params;

  std::size_t order() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

namespace detail {

template <class Real>
struct ReferenceRule {
  std::vector<Real> t;  // ascending in (-1,1)
  std::vector<Real> w;
};

// Gauss rule on [-1,1] for (1-t)^a (1+t)^b: eigenvalues of the Jacobi matrix
// seed a Newton polish carried out in Real, weights from the Christoffel sum.
template <class Real>
ReferenceRule<Real> reference_jacobi_rule(std::size_t m, double a, double b) {
  require<ParameterError>(m >= 1, "quadrature order must be positive");
  require<ParameterError>(a > -1.0 && b > -1.0, "weight exponents must exceed -1");
  const auto cd = jacobi_coeffs<double>(a, b, m);
  const auto cr = jacobi_coeffs<Real>(a, b, m);

  std::vector<double> guess(m);
  if (m == 1) {
    guess[0] = cd.diag[0];
  } else {
    Eigen::VectorXd d(m), e(m - 1);
    for (std::size_t k = 0; k < m; ++k) d[k] = cd.diag[k];
    for (std::size_t k = 1; k < m; ++k) e[k - 1] = cd.off[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    for (std::size_t k = 0; k < m; ++k) guess[k] = es.eigenvalues()[k];
  }

  ReferenceRule<Real> r{std::vector<Real>(m), std::vector<Real>(m)};
  std::vector<Real> p(m);
  const Real tol = Real(8.0 * rmath::epsilon<Real>());
  for (std::size_t i = 0; i < m; ++i) {
    Real t = guess[i];
    for (int it = 0; it < 12; ++it) {
      Real pn, dpn, pnm1;
      jacobi_eval_n(cr, t, m, pn, dpn, pnm1);
      const Real dt = pn / dpn;
      t -= dt;
      if (rmath::abs(dt) <= tol) break;
    }
    r.t[i] = t;
    jacobi_values(cr, t, m, p.data());
    Real s = 0;
    for (std::size_t k = 0; k < m; ++k) s += p[k] * p[k];
    r.w[i] = Real(1) / s;
  }
  return r;
}

}  // namespace detail

inline QuadratureRule gauss_rule(RuleKind kind, std::size_t m, double lo, double hi,
                                 std::optional<JacobiExponents> jp = std::nullopt) {
  detail::require<ParameterError>(m >= 1, "quadrature order must be positive");
  detail::require<ParameterError>(hi > lo, "quadrature interval must have hi > lo");
  JacobiExponents e{};
  if (kind == RuleKind::JacobiWeighted) {
    detail::require<ParameterError>(jp.has_value(), "JacobiWeighted rule needs exponents");
    e = *jp;
    detail::require<ParameterError>(e.a > -1.0 && e.b > -1.0,
                                    "weight exponents must exceed -1");
  }
  const auto ref = detail::reference_jacobi_rule<long double>(m, e.a, e.b);
  const long double half = 0.5L * ((long double)hi - (long double)lo);
  const long double scale = std::pow(half, (long double)(e.a + e.b + 1.0));
  QuadratureRule q;
  q.kind = kind;
  q.lo = lo;
  q.hi = hi;
  if (kind == RuleKind::JacobiWeighted) q.jacobi_params = e;
  q.nodes.resize(m);
  q.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    q.nodes[i] = static_cast<double>(lo + half * (ref.t[i] + 1.0L));
    q.weights[i] = static_cast<double>(scale * ref.w[i]);
  }
  return q;
}

}  // namespace hardedge
