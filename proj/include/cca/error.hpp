#pragma once

#include <stdexcept>
#include <string>

namespace cca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown catalog tag.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its admissible range (p <= 1 for a power atom, lambda <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's domain (x <= 0 for the Gamma limit, p < 1 for ball volumes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dimension or geometry mismatch between grids, atoms and query points.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A transform received a function that is not proper (all +inf, or some -inf).
class ImproperError : public Error {
 public:
  using Error::Error;
};

/// A convex-only operation received a function that fails the discrete convexity check.
class NonConvexError : public Error {
 public:
  using Error::Error;
};

/// The answer lies on the grid boundary, so the grid has to be widened.
class GridTooSmallError : public Error {
 public:
  using Error::Error;
};

/// The Asplund sandwich bound broke beyond tolerance.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds a hard limit (N! permutations, node cap, ...).
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure failed to reach the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace cca
