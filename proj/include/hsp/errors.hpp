#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad images, unknown shorthand, bad JSON).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ShapeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// An element that was required to lie in a group does not.
class NotInGroup : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Closure of a generator set grew beyond the enumeration cap.
class ExceedsCap : public Error {
 public:
  using Error::Error;
};

/// An instance does not satisfy its promise.
class PromiseViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotSmooth : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NoDisjointOrbit : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidKGenerators : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Decision answers that cannot come from any correct oracle.
class OracleInconsistent : public Error {
 public:
  using Error::Error;
};

/// Hidden-shift search found no accepting coset representative.
class NoShift : public Error {
 public:
  using Error::Error;
};

}  // namespace hsp
