#pragma once

#include <stdexcept>
#include <string>

namespace fptlab {

// Malformed or out-of-range inputs (bad dimensions, bad parameters, bad config).
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A mapping left its own body. This is a hard error: every mapping in the lab
// is a self-map of its convex body by contract.
struct MappingError : std::runtime_error {
  explicit MappingError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called without the evidence it requires (e.g. asking for a
// residual-monotonicity certificate without an attested condition report).
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fptlab
