#pragma once

#include <stdexcept>
#include <string>

namespace skewbeta {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distribution or ensemble parameter outside its domain (shape <= 0, beta <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Matrix order too small for the requested construction.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: wrong lengths, broken invariants of a value type.
class InputError : public Error {
 public:
  using Error::Error;
};

// Probability-zero degeneracies: exact-zero pivot column, colliding eigenvalues.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown in an otherwise valid computation.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to reach the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace detail
}  // namespace skewbeta
