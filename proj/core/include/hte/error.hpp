#pragma once

#include <stdexcept>
#include <string>

namespace hte {

/// Failure categories raised by the library. The CLI maps configuration
/// errors to exit code 2 and everything data-related to exit code 3.
enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  InsufficientData,
  DegenerateData,
  InvalidInput,
  SingularCovariance,
  Parse,
  Config,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by the user's configuration rather than the data.
  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::Config || kind_ == ErrorKind::InvalidDimension;
  }

private:
  ErrorKind kind_;
};

}  // namespace hte
