#pragma once

#include <stdexcept>
#include <string>

namespace lcc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input bytes (JSON/CSV syntax, wrong field types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A solution or intermediate structure that breaks a structural contract
/// (unassigned point, center outside the center set, unknown leaf, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Desk-scale guard exceeded (oracle sizes, exact DP budget).
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Numerical machinery failed to converge or produced an impossible state.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcc
