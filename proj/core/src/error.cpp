#include "hte/error.hpp"

namespace hte {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::DegenerateData: return "degenerate-data";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::SingularCovariance: return "singular-covariance";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Config: return "config-error";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace hte
