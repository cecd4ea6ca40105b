#pragma once

#include <stdexcept>
#include <string>

namespace reptensor {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands with incompatible dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or inconsistent user parameter (k, t, d, method name, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input violates a structural precondition, e.g. asymmetric weights handed
// to a Laplacian.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be symmetric positive definite is not.
class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, double smallest_eigenvalue, double norm)
      : Error(what), smallest_eigenvalue_(smallest_eigenvalue), norm_(norm) {}

  double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }
  double norm() const noexcept { return norm_; }

 private:
  double smallest_eigenvalue_;
  double norm_;
};

// An eigensolve finished but its residual or orthonormality bounds failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A required matrix is structurally rank deficient (e.g. between-class
// scatter of a single-class dataset).
class RankError : public Error {
 public:
  using Error::Error;
};

// Undecodable or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace reptensor
