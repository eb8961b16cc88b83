#pragma once

#include <stdexcept>
#include <string>

namespace hardedge {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid discretization or configuration parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not deliver a trustworthy result.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

class ConditioningError : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

class NonConvergenceError : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

class AccuracyNotReached : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

class BranchError : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

namespace detail {

template <class E>
inline void require(bool ok, const std::string& what) {
  if (!ok) throw E(what);
}

}  // namespace detail
}  // namespace hardedge
