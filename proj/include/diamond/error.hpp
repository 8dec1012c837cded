#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// p1 * p2 == 0, so quantities that divide by sqrt(p1 p2) are undefined.
class DegenerateChannelError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A symmetric-case quantity was requested outside the regime where it exists.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A correlation exceeds what the relay links can support.
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed call: empty term lists, zero trial counts and the like.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A caller-guaranteed structural property (monotonicity, a sign change) does
/// not hold.
class StructureError : public Error {
 public:
  using Error::Error;
};

class NoCrossingError : public StructureError {
 public:
  using StructureError::StructureError;
};

/// Base for failures specific to the Monte-Carlo simulator.
class SimulationError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class PowerInfeasibleError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class EmptyPairSetError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace diamond
