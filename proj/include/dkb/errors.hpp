#pragma once

#include <stdexcept>
#include <string>

namespace dkb {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input values, bad dimensions/parameters.
struct InvalidInput : Error {
  using Error::Error;
};

/// Incompatible matrix/block shapes.
struct ShapeError : Error {
  using Error::Error;
};

/// Affine transform with zero slope: the transformed spectrum collapses
/// to a point and no DK intervals exist.
struct DegenerateTransform : Error {
  using Error::Error;
};

/// Required eigengap is zero (Assumption on the spectra fails).
struct GapViolation : Error {
  using Error::Error;
};

/// Neither DK interval choice satisfies the constraints.
struct NoValidInterval : Error {
  using Error::Error;
};

/// Grid search found no transform satisfying the constraints.
struct NoFeasibleTransform : Error {
  using Error::Error;
};

/// Graph has an isolated node; D^{-1/2} undefined.
struct DegreeZero : Error {
  using Error::Error;
};

/// Random graph generation exceeded its retry budget.
struct GenerationFailed : Error {
  using Error::Error;
};

/// Text input (matrix / edge list) could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

/// An iterative kernel failed to converge within its sweep budget.
struct ConvergenceFailure : Error {
  using Error::Error;
};

}  // namespace dkb
