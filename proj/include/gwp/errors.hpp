#pragma once

#include <stdexcept>
#include <string>

namespace gwp {

/// Failure categories raised by the numerical kernels.
enum class ErrorKind {
  kIllConditioned,
  kNotPureState,
  kDegenerateAction,
  kStepTooLarge,
  kSingularUntangle,
  kDimensionMismatch,
  kEmptyEnsemble,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Configuration problems; `line` is 0 when no source line applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace gwp
