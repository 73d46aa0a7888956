#pragma once

#include <stdexcept>
#include <string>

namespace graphonlab {

// Malformed input, violated precondition, or inconsistent arguments.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size or work cap was exceeded (pattern too large, block sum too long).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An internal identity that must hold exactly did not.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace graphonlab
