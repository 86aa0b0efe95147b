#pragma once

#include <stdexcept>
#include <string>

namespace svl {

// Base for every error raised by the library. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrong number of qubits, or an n/m argument outside its allowed range.
class InvalidArity : public Error {
 public:
  using Error::Error;
};

// Coefficients or amplitudes that do not square-sum to one.
class InvalidNormalization : public Error {
 public:
  using Error::Error;
};

// Qubit index lists that are empty, unsorted or out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Any other input outside the domain of a formula (e.g. lambda != 0 for F/G).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace svl
