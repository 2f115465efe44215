#ifndef EDGEX_ERROR_HPP
#define EDGEX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace edgex {

// Base for every error raised by the library. The CLI maps subclasses to
// distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index or step outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed value: zero multiplicity, non-bijective permutation, bad file row.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Instance too large for an exact/enumerative routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Model hyperparameters outside their domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A measure with no atoms where at least one is required.
class DegenerateMeasureError : public Error {
 public:
  using Error::Error;
};

// Step collection of the wrong combinatorial kind for the operation.
class KindError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgex

#endif  // EDGEX_ERROR_HPP
