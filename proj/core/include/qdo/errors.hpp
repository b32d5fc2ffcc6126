#pragma once

#include <stdexcept>
#include <string>

namespace qdo {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (bad angle, count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The potential matrix has an eigenvalue at or below the positivity floor.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// The perturbative energy series is outside its radius of convergence.
class SeriesDivergent : public Error {
 public:
  using Error::Error;
};

/// A two-mode covariance block violates the physicality constraints.
class UnphysicalState : public Error {
 public:
  using Error::Error;
};

/// Every reference tangle entering an entanglement distribution index vanishes.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// No sign change of the boundary objective was found in the scanned range.
class NoBracket : public Error {
 public:
  using Error::Error;
};

/// The requested system exceeds the configured matrix budget.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace qdo
