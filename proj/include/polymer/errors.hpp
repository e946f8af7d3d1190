#pragma once

#include <stdexcept>
#include <string>

namespace polymer {

// Solver failed to converge.  Carries the last residual so callers
// (and the CLI exit-code mapping) can report how close it got.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

}  // namespace polymer
