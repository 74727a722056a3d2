#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigcurve {

enum class ErrorCode {
  NonFinite,
  InvalidArgument,
  InvalidSides,
  NegativeDiscriminant,
  NotRealizable,
  DegenerateBase,
  DuplicatePoints,
  DegenerateConfiguration,
  VanishingCurvature,
  TooFewPoints,
  UnknownCurve,
  EmptyRange,
  SingularParametrization,
  InflectionPoint,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSides: return "InvalidSides";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::VanishingCurvature: return "VanishingCurvature";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::UnknownCurve: return "UnknownCurve";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::SingularParametrization: return "SingularParametrization";
    case ErrorCode::InflectionPoint: return "InflectionPoint";
  }
  return "Unknown";
}

/// Every library failure is reported through this exception. Errors raised
/// while walking a curve carry the offending sample index.
class SignatureError : public std::runtime_error {
 public:
  SignatureError(ErrorCode code, const std::string& detail,
                 std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(compose(code, detail, index)),
        code_(code),
        detail_(detail),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

  SignatureError at_index(std::size_t index) const {
    return SignatureError(code_, detail_, index);
  }
  SignatureError with_context(const std::string& context) const {
    return SignatureError(code_, context + ": " + detail_, index_);
  }

 private:
  static std::string compose(ErrorCode code, const std::string& detail,
                             std::optional<std::size_t> index) {
    std::string msg(to_string(code));
    if (!detail.empty()) msg += ": " + detail;
    if (index) msg += " (index " + std::to_string(*index) + ")";
    return msg;
  }

  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> index_;
};

}  // namespace sigcurve
