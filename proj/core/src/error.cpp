#include "gdchfif/error.hpp"

#include <utility>

namespace gdchfif {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonIncreasingAbscissa: return "NonIncreasingAbscissa";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::AssignmentLengthMismatch: return "AssignmentLengthMismatch";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidScaling: return "InvalidScaling";
    case ErrorCode::ParamsLengthMismatch: return "ParamsLengthMismatch";
    case ErrorCode::HorizontalExpansion: return "HorizontalExpansion";
    case ErrorCode::ZeroLengthSourceInterval: return "ZeroLengthSourceInterval";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::JoinUpViolation: return "JoinUpViolation";
    case ErrorCode::StructuralMismatch: return "StructuralMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::PreimageOutOfRange: return "PreimageOutOfRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     const std::string& path) {
  std::string out{to_string(code)};
  if (!path.empty()) out += " at " + path;
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message,
             std::optional<std::size_t> index, std::string path)
    : std::runtime_error(decorate(code, message, path)),
      code_(code),
      index_(index),
      path_(std::move(path)),
      message_(std::move(message)) {}

Error Error::with_path_prefix(std::string_view prefix) const {
  std::string joined{prefix};
  if (!path_.empty()) {
    if (path_.front() != '[') joined += '.';
    joined += path_;
  }
  return Error(code_, message_, index_, joined);
}

Error Error::with_path(std::string path) const {
  return Error(code_, message_, index_, std::move(path));
}

NoConvergenceError::NoConvergenceError(std::string message,
                                       std::vector<double> trace)
    : Error(ErrorCode::NoConvergence, std::move(message)),
      trace_(std::move(trace)) {}

}  // namespace gdchfif
