#pragma once

#include <stdexcept>
#include <string>

namespace gp {

/// Invalid arguments or malformed input (bad dimension, inactive simplex,
/// unreadable file, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to deliver (singular local system, eigen
/// solver breakdown, CG stagnation, closure deadlock guard hit).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A certified bound or structural invariant does not hold.
class PropertyViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace gp
