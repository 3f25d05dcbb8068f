#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdchfif {

enum class ErrorCode {
  NonIncreasingAbscissa,
  TooFewPoints,
  NonFiniteValue,
  AssignmentLengthMismatch,
  UnknownVertex,
  InvalidScaling,
  ParamsLengthMismatch,
  HorizontalExpansion,
  ZeroLengthSourceInterval,
  SingularSystem,
  JoinUpViolation,
  StructuralMismatch,
  NoConvergence,
  EmptySet,
  PreimageOutOfRange,
  OutOfDomain,
  SyntaxError,
  UnknownField,
  MissingSection,
  EmptyInput,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Structured failure raised by every validating operation in the library.
///
/// `index` carries the offending element position when one exists (a point
/// index, a subinterval number). `path` carries a document field path such
/// as `params[1].maps[3].beta` when the error originates from a parsed file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> index = std::nullopt, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  const std::string& path() const noexcept { return path_; }
  /// The message without the code and path decoration of what().
  const std::string& message() const noexcept { return message_; }

  /// Returns a copy with `prefix` prepended to the field path.
  Error with_path_prefix(std::string_view prefix) const;
  /// Returns a copy with the field path replaced.
  Error with_path(std::string path) const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
  std::string path_;
  std::string message_;
};

/// Raised when a fixed-point iteration exhausts its budget. Carries the
/// recorded per-iteration change so callers can report partial progress.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(std::string message, std::vector<double> trace);

  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace gdchfif
