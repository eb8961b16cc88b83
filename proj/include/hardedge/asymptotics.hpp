#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "fredholm.hpp"
#include "specfun.hpp"

namespace hardedge {

/// Large-R decomposition of log P^(alpha)(R).
struct AsymptoticTerms {
  double quadratic = 0.0;  // -R^2/4
  double linear = 0.0;     // alpha R
  double log_term = 0.0;   // -(alpha^2/2) log R
  double constant = 0.0;   // log G(1+alpha) - (alpha/2) log(2 pi)
  int tau = 1;

  double total() const { return quadratic + linear + log_term + constant; }
};

inline AsymptoticTerms asym_log_p(double alpha, double R) {
  detail::require<DomainError>(alpha > -1.0 && alpha < 1.0, "asymptotic formula needs |alpha| < 1");
  detail::require<DomainError>(R > 0.0, "asymptotic formula needs R > 0");
  AsymptoticTerms t;
  t.quadratic = -R * R / 4.0;
  t.linear = alpha * R;
  t.log_term = -0.5 * alpha * alpha * std::log(R);
  t.constant = barnes_g_ln(1.0 + alpha) - 0.5 * alpha * std::log(2.0 * std::numbers::pi);
  return t;
}

/// Four-term large-s expansion of sigma(s) = -s d/ds log P(sqrt s). The sign
/// tau = -1 is the rejected branch, kept for the sign-discrimination check.
inline double sigma_expansion(double alpha, double s, int tau = 1) {
  detail::require<DomainError>(s > 0.0, "sigma expansion needs s > 0");
  detail::require<ParameterError>(tau == 1 || tau == -1, "tau must be +1 or -1");
  const double r = std::sqrt(s);
  return s / 4.0 - tau * alpha / 2.0 * r + alpha * alpha / 4.0 + tau * alpha / (16.0 * r);
}

/// Relative residual of (s s'')^2 + s'(sigma - s s')(4 s' - 1) - alpha^2 s'^2.
inline double piii_residual(const SigmaSample& x, double alpha) {
  const double a = x.s * x.sigma_pp;
  const double raw = a * a + x.sigma_p * (x.sigma - x.s * x.sigma_p) * (4.0 * x.sigma_p - 1.0) -
                     alpha * alpha * x.sigma_p * x.sigma_p;
  return raw / std::max(1.0, a * a + x.sigma_p * x.sigma_p * x.s);
}

/// log of R^{g^2/2+g/2} (2 pi)^{-g/2} 2^{-g^2-g/2} G(1/2)/G(1/2-g).
inline double thm81_asym(double gamma, double R) {
  detail::require<DomainError>(gamma > -1.5 && gamma < 0.5, "gamma must lie in (-3/2, 1/2)");
  detail::require<DomainError>(R > 0.0, "R must be positive");
  return (0.5 * gamma * gamma + 0.5 * gamma) * std::log(R) -
         0.5 * gamma * std::log(2.0 * std::numbers::pi) -
         (gamma * gamma + 0.5 * gamma) * std::log(2.0) + barnes_g_ln(0.5) -
         barnes_g_ln(0.5 - gamma);
}

/// The log-asymptotics assembled from the two power-symbol asymptotics and
/// the 2^{(1/2+a)(1/2+b)} constant with b = alpha, compared with asym_log_p.
inline double s8_assembled(double alpha, double R) {
  detail::require<DomainError>(std::fabs(alpha) < 1.0, "needs |alpha| < 1");
  return -R * R / 4.0 + alpha * R - alpha * (0.5 + alpha) * std::log(2.0) + thm81_asym(-0.5, R) -
         thm81_asym(-0.5 - alpha, R);
}

inline double s8_consistency(double alpha, double R) {
  return std::fabs(s8_assembled(alpha, R) - asym_log_p(alpha, R).total());
}

}  // namespace hardedge
