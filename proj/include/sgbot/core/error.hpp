#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sgbot {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateCloud,
  kEmptyCloud,
  kEmptyMask,
  kShapeMismatch,
  kFileNotFound,
  kParseError,
  kSchemaError,
  kNoPlaceableObjects,
  kUnknownReference,
  kInvariantViolation,
  kLayoutInfeasible,
  kMissingPrior,
  kKeyMismatch,
  kBufferExhausted,
  kPlacementFailure,
  kIdMismatch,
};

// CamelCase name, e.g. "InvariantViolation".
std::string_view error_name(ErrorCode code);
// snake_case name used in CLI error objects, e.g. "file_not_found".
std::string error_slug(ErrorCode code);

// The single exception type thrown by the library. `index` carries the
// offending position for operations over ordered inputs (edit lists).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> index_;
};

}  // namespace sgbot
