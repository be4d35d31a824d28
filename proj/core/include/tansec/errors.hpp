#pragma once

#include <stdexcept>
#include <string>

namespace tansec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The graph Hessian at a boundary point is not positive definite.
class NonConvexPoint : public Error {
 public:
  using Error::Error;
};

/// A perturbation moves the boundary inwards somewhere.
class NegativeSpeed : public Error {
 public:
  using Error::Error;
};

/// A subspace basis is not orthonormal or has the wrong shape.
class BadSubspace : public Error {
 public:
  using Error::Error;
};

/// A section or cap left the local patch around the tangency point.
class EpsilonTooLarge : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

/// The limit fit does not describe the measured series.
class PoorFit : public Error {
 public:
  using Error::Error;
};

/// The isometry handed to a symmetry check does not map K onto itself.
class NotASymmetryOfK : public Error {
 public:
  using Error::Error;
};

/// A finite-difference estimate failed its half-step consistency check.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tansec
