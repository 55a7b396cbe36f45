#pragma once

#include <stdexcept>
#include <string>

namespace qmeas {

// Base class for all qmeas errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operand dimensions are incompatible (not square, factor mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input required to be Hermitian is not, within tolerance.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

// State vector or density operator fails its normalization invariant.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Scalar argument outside its admissible range, non-finite entries,
// ill-formed label lists and similar input defects.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of (numerically) zero probability.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// A pair of observables required to commute does not.
class CommutativityError : public Error {
 public:
  using Error::Error;
};

// A map required to extend to (or be) a unitary cannot.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

// Requested construction is outside the supported class of inputs.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Operator tomography produced an unusable result.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

// Scenario file or payload violates the input schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmeas
