#pragma once

#include <stdexcept>
#include <string>

namespace wginv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Problems with the caller's input: shapes, formats, forbidden values.
struct InputError : Error {
  using Error::Error;
};

// Numerical failures: rank decisions, unstable decompositions, violated invariants.
struct NumericalError : Error {
  using Error::Error;
};

struct ShapeMismatch : InputError {
  using InputError::InputError;
};

struct ZeroWeight : InputError {
  using InputError::InputError;
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct ShapeError : InputError {
  using InputError::InputError;
};

struct Singular : NumericalError {
  using NumericalError::NumericalError;
};

struct NotComplementary : NumericalError {
  using NumericalError::NumericalError;
};

struct NotConsistent : NumericalError {
  using NumericalError::NumericalError;
};

struct IndexOverflow : NumericalError {
  using NumericalError::NumericalError;
};

struct IndexTooLarge : NumericalError {
  using NumericalError::NumericalError;
};

struct DecompositionFailure : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateDraw : NumericalError {
  using NumericalError::NumericalError;
};

struct InvariantViolation : NumericalError {
  using NumericalError::NumericalError;
};

}
