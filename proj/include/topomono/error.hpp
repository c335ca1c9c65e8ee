#pragma once

#include <stdexcept>
#include <string>

namespace topomono {

// Malformed input: shape mismatches, bad labels, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed: singular blocks, non-convergence, zero divisors.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search would exceed its configured candidate cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trace-type operations on the zero object.
class ZeroObjectError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace topomono
