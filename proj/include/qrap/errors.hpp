#pragma once

#include <stdexcept>

namespace qrap {

// Requested prime range exceeds the configured cap.
struct RangeTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Brute-force operation asked for an instance beyond its hard cap.
struct InstanceTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qrap
