#pragma once

#include <stdexcept>
#include <string>

namespace nures {

/// Requested problem size exceeds a documented capacity guard
/// (dense Hamiltonians above N=14, full-SRE enumeration above N=10, ...).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Evolution produced non-finite amplitudes or a decomposition failed.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nures
