#pragma once

#include <stdexcept>
#include <string>

namespace dualpol {

/// Bad parameters or malformed inputs. The CLI maps this to exit status 2.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A device that puts no light into the requested signal ports.
struct NoSignalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dualpol
