#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tracelab {

// Base class for every error raised by the library. The CLI maps these onto
// exit codes: DomainError -> usage (1), everything else -> numerical failure (3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-conformable operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Arguments outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input that fails a structural invariant (non-Hermitian, non-finite, not a state).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Zero or negative eigenvalues where a strictly positive spectrum is required.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Jacobi sweeps exhausted; carries the remaining off-diagonal Frobenius mass.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Roundoff-level breakdown: indefinite inner matrix, complex trace, ...
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Support of one operator not contained in the support of another.
class SupportError : public Error {
 public:
  using Error::Error;
};

// Too many failed trials to say anything about a probe.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// Counterexample search exhausted its schedule. The trace records each
// (k, x, gap) attempt so the caller can see where the signs went wrong.
class WitnessSearchError : public Error {
 public:
  WitnessSearchError(const std::string& what, std::vector<std::string> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const noexcept { return trace_; }

 private:
  std::vector<std::string> trace_;
};

}  // namespace tracelab
