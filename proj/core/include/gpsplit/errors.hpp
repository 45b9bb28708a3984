#pragma once

#include <stdexcept>
#include <string>

namespace gpsplit {

/// Invalid input: bad grid parameters, malformed configuration, shape mismatch.
/// The command-line tool maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field value became non-finite or exceeded the blow-up threshold.
/// The command-line tool maps this to exit code 3.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time, int step)
      : std::runtime_error(what), time_(time), step_(step) {}

  /// Clock of the last valid state.
  double time() const noexcept { return time_; }
  /// Index of the step that failed.
  int step() const noexcept { return step_; }

 private:
  double time_;
  int step_;
};

}  // namespace gpsplit
