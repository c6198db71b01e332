#pragma once

#include <stdexcept>
#include <string>

namespace kolab {

// Precondition or infeasibility failure. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cache file whose parameter hash does not match the running configuration.
class StaleCacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace kolab
