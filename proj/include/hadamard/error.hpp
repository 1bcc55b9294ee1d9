#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (mismatched spaces, empty input, bad flag).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// The operation is not available for this kind of space or body.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An intersection of convex bodies was found to be empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Two sphere points are antipodal, so the geodesic between them is not unique.
class NonUniqueGeodesicError : public Error {
 public:
  using Error::Error;
};

/// A spherical configuration left the regime (radius < pi/2) where balls are convex.
class NonConvexRegimeError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not converge within its iteration cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A counterexample builder could not satisfy one of its constraints.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A nested family has a bounded distance to the basepoint, hence a nonempty
/// intersection; the finite-intersection route applies instead.
class NonEmptyIntersectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hadamard
