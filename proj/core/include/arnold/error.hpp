#pragma once

#include <stdexcept>
#include <string>

namespace arnold {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: malformed parameters, schema violations, potentials outside
// the multi-well regime.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation ran but its result cannot be trusted (boundary leak, missing
// states, no sign change to bracket).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace arnold
