#pragma once

#include <stdexcept>
#include <string>

namespace twinmul {

// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or unusable sizes (vector length vs. matrix width, non-square
// matrix where a square one is required, zero dimensions).
class dimension_error : public error {
 public:
  using error::error;
};

// A row/column/entry index outside the valid range.
class index_error : public error {
 public:
  using error::error;
};

// An operation would exceed a configured work budget; the message names the
// bound that was exceeded.
class capacity_error : public error {
 public:
  using error::error;
};

// A structurally invalid object (malformed merge sequence, bad interval);
// for merge sequences the message carries the offending op index.
class structure_error : public error {
 public:
  using error::error;
};

// Malformed input file; the message carries the line number.
class parse_error : public error {
 public:
  using error::error;
};

// An internal consistency check failed (e.g. a freshly built decomposition
// does not validate against its matrix). Maps to exit code 3 in the CLI.
class validation_error : public error {
 public:
  using error::error;
};

}  // namespace twinmul
