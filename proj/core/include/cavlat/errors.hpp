#pragma once

#include <stdexcept>
#include <string>

namespace cavlat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad extents, negative couplings, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be Hermitian (or anti-Hermitian) is not, within tolerance.
class HermitianityError : public ValidationError {
 public:
  HermitianityError(const std::string& what, double violation)
      : ValidationError(what), violation_(violation) {}

  /// Largest |A_ij - conj(A_ji)| (or |A_ij + conj(A_ji)|) found.
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

/// An internal numerical invariant failed its tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A requested target lies outside what the model can reach.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace cavlat
