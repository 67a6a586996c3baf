#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace siegel {

enum class ErrorKind {
  InvalidArgument,
  NonInvertible,
  NotUnimodular,
  NonPositiveEntry,
  InvalidRange,
  ToleranceNotMet,
  InvalidWitness,
  DimensionTooLarge,
  MalformedConfig,
  MalformedInput,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::MalformedConfig: return "MalformedConfig";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every computation failure in the library is reported as an Error carrying
/// a machine-readable kind; the CLI prints the kind name on exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace siegel
