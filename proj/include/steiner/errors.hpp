#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed arguments or input content.
struct input_error : error {
  using error::error;
};

// Internal consistency violations (corrupt ledgers, impossible states).
struct data_error : error {
  using error::error;
};

// A configured cap was exceeded (group element cap, vertex limit, ...).
struct resource_error : error {
  using error::error;
};

// Filesystem failures.
struct io_error : error {
  using error::error;
};

}  // namespace steiner
