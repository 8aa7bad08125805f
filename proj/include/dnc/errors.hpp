#pragma once

#include <stdexcept>
#include <string>

namespace dnc {

// Raised when an action space is too large to enumerate; methods that need
// the full space a priori (knn, vac) surface this as a skipped run.
struct CardinalityExceeded : std::runtime_error {
  explicit CardinalityExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dnc
