#pragma once

#include <stdexcept>
#include <string>

namespace riffle {

// Base class for all errors raised by the library. The CLI maps each
// subclass to a distinct process exit code.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap (enumeration, partition count, weight-vector
// length) would be exceeded. The message always names the cap.
class capacity_error : public error {
 public:
  using error::error;
};

// A series whose terms do not decay; the requested (n, k) pair is outside
// the convergence region.
class divergence_error : public error {
 public:
  using error::error;
};

// A parameter is outside the region where the requested formula holds;
// the message quotes the violated constraint.
class validity_error : public error {
 public:
  using error::error;
};

// Malformed command-line usage.
class usage_error : public error {
 public:
  using error::error;
};

}  // namespace riffle
