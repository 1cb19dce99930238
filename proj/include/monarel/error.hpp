#pragma once

#include <stdexcept>
#include <string>

namespace monarel {

/// Base of everything the library throws for bad input or a violated
/// precondition. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monarel
