#pragma once

// Dense LU with partial pivoting, generic over the scalar so the Nystrom
// determinant can run in binary128.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace hardedge::detail {

template <class Real>
class DenseLU {
 public:
  // a is n x n row-major and is consumed.
  DenseLU(std::vector<Real> a, std::size_t n) : a_(std::move(a)), n_(n), piv_(n) {
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      Real best = rmath::abs(at(k, k));
      for (std::size_t i = k + 1; i < n_; ++i) {
        const Real v = rmath::abs(at(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (!(best >= Real(1e-300)))
        throw SingularMatrixError("LU pivot below 1e-300: matrix numerically singular");
      piv_[k] = p;
      if (p != k) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
        sign_ = -sign_;
      }
      const Real inv = Real(1) / at(k, k);
      Real* rk = &a_[k * n_];
      for (std::size_t i = k + 1; i < n_; ++i) {
        Real* ri = &a_[i * n_];
        const Real f = ri[k] * inv;
        ri[k] = f;
        if (f == Real(0)) continue;
        for (std::size_t j = k + 1; j < n_; ++j) ri[j] -= f * rk[j];
      }
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const Real d = at(k, k);
      if (d < Real(0)) sign_ = -sign_;
      log_abs_det_ += rmath::log(rmath::abs(d));
    }
  }

  Real log_abs_det() const { return log_abs_det_; }
  int sign() const { return sign_; }

  std::vector<Real> solve(std::vector<Real> b) const {
    for (std::size_t k = 0; k < n_; ++k)
      if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (std::size_t i = 0; i < n_; ++i) {
      Real s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * b[j];
      b[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      Real s = b[i];
      for (std::size_t j = i + 1; j < n_; ++j) s -= at(i, j) * b[j];
      b[i] = s / at(i, i);
    }
    return b;
  }

 private:
  Real& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Real& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<Real> a_;
  std::size_t n_;
  std::vector<std::size_t> piv_;
  int sign_ = 1;
  Real log_abs_det_ = 0;
};

}  // namespace hardedge::detail
