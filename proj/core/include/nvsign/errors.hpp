#pragma once

#include <stdexcept>
#include <string>

namespace nvsign {

// Requested coefficient index lies beyond what a series or form carries.
class InsufficientPrecision : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An exact check contradicted a statement that is a theorem. Carries the
// counterexample in its message; the CLI maps it to exit status 3.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bounded search (gap ceiling, witness window) ran out without success.
// Reported as a finding rather than a failure.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nvsign
