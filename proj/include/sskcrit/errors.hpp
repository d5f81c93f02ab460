#pragma once

#include <stdexcept>
#include <string>

namespace sskcrit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad shape, non-positive size, out-of-range grid, etc.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Two eigenvalues coincide below the bisection resolution.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// A spectral parameter sits on (or numerically at) a pole of the resolvent.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

/// A critical multiplier is degenerate (J' = J'' = 0), or the field is
/// aligned with an eigenvector.
class DegenerateCritical : public Error {
 public:
  using Error::Error;
};

/// Root bracketing ran past its search window.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// The requested eigenvalues are not resolved by the discretization.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

}  // namespace sskcrit
