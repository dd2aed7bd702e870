#pragma once

#include <stdexcept>
#include <string>

namespace cabledyn {

/// Base class for all cabledyn errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameters, load layout, motion constraints, or time windows.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cabledyn
