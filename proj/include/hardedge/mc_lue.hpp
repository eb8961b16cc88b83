#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace hardedge {

struct McConfig {
  std::size_t N = 100;
  double alpha = 0.0;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double R = 2.0;
};

struct McEstimate {
  double p_hat = 1.0;
  double std_err = 0.0;
  std::size_t successes = 0;
  McConfig config;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based stream: output i of trial t depends only on (seed, t, i).
class TrialStream {
 public:
  using result_type = std::uint64_t;
  TrialStream(std::uint64_t seed, std::uint64_t trial)
      : key_(splitmix(seed ^ splitmix(trial ^ 0x6A09E667F3BCC909ULL))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return splitmix(key_ + 0x9E3779B97F4A7C15ULL * ++ctr_); }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

// Tridiagonal T = B B^T for the lower bidiagonal Laguerre factor B with
// B_ii = chi_{2(alpha+N-i+1)}/sqrt 2 and B_{i+1,i} = chi_{2(N-i)}/sqrt 2.
struct Tridiag {
  std::vector<double> d, e2;  // diagonal, squared off-diagonal
};

inline Tridiag draw_laguerre(const McConfig& c, std::uint64_t trial) {
  TrialStream rng(c.seed, trial);
  const std::size_t N = c.N;
  std::vector<double> x2(N), y2(N > 0 ? N - 1 : 0);
  for (std::size_t i = 1; i <= N; ++i) {
    // (chi_k / sqrt 2)^2 ~ Gamma(k/2, 1)
    x2[i - 1] = std::gamma_distribution<double>(c.alpha + double(N - i + 1), 1.0)(rng);
    if (i < N) y2[i - 1] = std::gamma_distribution<double>(double(N - i), 1.0)(rng);
  }
  Tridiag t;
  t.d.resize(N);
  t.e2.resize(N > 0 ? N - 1 : 0);
  for (std::size_t i = 0; i < N; ++i) {
    t.d[i] = x2[i] + (i ? y2[i - 1] : 0.0);
    if (i + 1 < N) t.e2[i] = x2[i] * y2[i];
  }
  return t;
}

// Number of eigenvalues below lambda (Sturm sequence of LDL^T pivots).
inline std::size_t sturm_count(const Tridiag& t, double lambda) {
  std::size_t cnt = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.d.size(); ++i) {
    q = t.d[i] - lambda - (i ? t.e2[i - 1] / q : 0.0);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++cnt;
  }
  return cnt;
}

inline double min_eig(const Tridiag& t) {
  double lo = 0.0, hi = t.d[0];  // Rayleigh quotient bound
  for (double v : t.d) hi = std::min(hi, v);
  while (sturm_count(t, hi) == 0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sturm_count(t, mid) == 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline void check_config(const McConfig& c) {
  require<ParameterError>(c.N >= 1, "Monte Carlo needs N >= 1");
  require<ParameterError>(c.trials >= 1, "Monte Carlo needs at least one trial");
  require<DomainError>(c.alpha > -1.0, "Laguerre exponent must exceed -1");
  require<DomainError>(c.R >= 0.0 && std::isfinite(c.R), "R must be finite and >= 0");
}

}  // namespace detail

/// Smallest eigenvalue of each sampled LUE matrix, in trial order.
inline std::vector<double> sample_min_eig(const McConfig& c) {
  detail::check_config(c);
  std::vector<double> out(c.trials);
  parallel_for(c.trials, [&](std::size_t t) { out[t] = detail::min_eig(detail::draw_laguerre(c, t)); });
  return out;
}

/// Fraction of trials with no eigenvalue in [0, R^2/(4N)].
inline McEstimate gap_prob_mc(const McConfig& c) {
  detail::check_config(c);
  McEstimate e;
  e.config = c;
  if (c.R == 0.0) {
    e.successes = c.trials;
    return e;
  }
  const double thr = c.R * c.R / (4.0 * double(c.N));
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (c.trials + kBlock - 1) / kBlock;
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(c.trials, (b + 1) * kBlock);
    for (std::size_t t = b * kBlock; t < end; ++t)
      if (detail::sturm_count(detail::draw_laguerre(c, t), thr) == 0) ++hits[b];
  });
  for (auto h : hits) e.successes += h;
  e.p_hat = double(e.successes) / double(c.trials);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(c.trials));
  return e;
}

}  // namespace hardedge
