#pragma once

// Elementary functions over double and binary128 so templated kernels can be
// instantiated in either precision.

#include <cmath>
#include <quadmath.h>

namespace hardedge {

using quad = __float128;

namespace rmath {

inline double sqrt(double x) { return std::sqrt(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double abs(double x) { return std::fabs(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double lgamma(double x) { return std::lgamma(x); }

inline long double sqrt(long double x) { return std::sqrt(x); }
inline long double exp(long double x) { return std::exp(x); }
inline long double log(long double x) { return std::log(x); }
inline long double pow(long double x, long double y) { return std::pow(x, y); }
inline long double abs(long double x) { return std::fabs(x); }
inline long double sin(long double x) { return std::sin(x); }
inline long double cos(long double x) { return std::cos(x); }
inline long double lgamma(long double x) { return std::lgamma(x); }

inline quad sqrt(quad x) { return ::sqrtq(x); }
inline quad exp(quad x) { return ::expq(x); }
inline quad log(quad x) { return ::logq(x); }
inline quad pow(quad x, quad y) { return ::powq(x, y); }
inline quad abs(quad x) { return ::fabsq(x); }
inline quad sin(quad x) { return ::sinq(x); }
inline quad cos(quad x) { return ::cosq(x); }
inline quad lgamma(quad x) { return ::lgammaq(x); }

template <class Real>
constexpr double epsilon();
template <>
constexpr double epsilon<double>() { return 2.220446049250313e-16; }
template <>
constexpr double epsilon<long double>() { return 1.0842021724855044e-19; }
template <>
constexpr double epsilon<quad>() { return 1.925929944387236e-34; }

}  // namespace rmath
}  // namespace hardedge
