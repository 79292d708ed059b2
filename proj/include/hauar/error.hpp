#pragma once

#include <stdexcept>
#include <string>

namespace hauar {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input data: image files, manifests, model files,
// scenario files.
class DataError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hauar
