#pragma once

#include <stdexcept>

namespace discord_dyn {

// Bad configuration or arguments, rejected before any numerics run.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The adaptive integrator could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instability or an unphysical intermediate detected while integrating.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace discord_dyn
