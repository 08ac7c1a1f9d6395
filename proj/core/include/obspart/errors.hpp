#pragma once

#include <stdexcept>
#include <string>

namespace obspart {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed system description (bad index, duplicate entry, empty row).
class InputError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A sensor placement cannot be realized under the given restrictions.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Two inputs that must describe the same graph disagree.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

/// Invalid tuning parameter (tolerance, trial count, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Linear-algebra failure in the numeric oracle.
class NumericError : public Error {
public:
  using Error::Error;
};

/// A structural invariant that the theory guarantees was violated.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace obspart
