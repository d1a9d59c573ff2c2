#ifndef QDIST_ERRORS_HPP
#define QDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdist {

// Base class for all library errors; lets callers map the whole family to
// one exit path while still distinguishing the kinds below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or argument lies outside the mathematical domain
// (q outside (0,1), x > n, nonpositive product factor, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An infinite product/series failed to converge within max_terms.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// The shifted argument of a Stieltjes-Wigert approximation is nonpositive:
// the approximation is undefined at this lattice point. Deliberately not
// conflated with "probability zero".
class OutOfSupportError : public Error {
 public:
  using Error::Error;
};

// An enumeration request exceeds the configured size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdist

#endif  // QDIST_ERRORS_HPP
