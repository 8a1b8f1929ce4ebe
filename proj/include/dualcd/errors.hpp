#pragma once

#include <stdexcept>
#include <string>

namespace dualcd {

// Invalid geometry, dimensions, or configuration supplied by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure detected while iterating (corrupted state, unbounded dual, ...).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dualcd
