#pragma once

#include <stdexcept>
#include <string>

namespace coorbital {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An angle or angle sum reached a collision (0 or 2*pi), or a value violated
/// the invariants of a domain type.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A bracket handed to the root finder has no strict sign change.
class NoSignChange : public Error {
  public:
    using Error::Error;
};

/// Null-space mass recovery on a configuration whose mass matrix has full rank.
class RankDeficiencyAbsent : public Error {
  public:
    using Error::Error;
};

/// A ratio was requested where its denominator vanishes.
class DegenerateDenominator : public Error {
  public:
    using Error::Error;
};

/// A recomputed special point disagrees with its reference coordinates.
class CatalogMismatch : public Error {
  public:
    using Error::Error;
};

/// Internal consistency failure in a solver: a root count, sign certificate
/// or residual check that must hold for a correct kernel did not.
class SolverError : public Error {
  public:
    using Error::Error;
};

}  // namespace coorbital
