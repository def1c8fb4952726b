#pragma once

#include <stdexcept>
#include <string>

namespace monobn {

// Invalid argument to a library operation (bad index, malformed distribution, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent dataset content.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in a model file, spec file, or delimited table.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Incomplete evidence handed to posterior inference.
struct InferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace monobn
