#include "sgbot/core/error.hpp"

#include <cctype>

namespace sgbot {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateCloud: return "DegenerateCloud";
    case ErrorCode::kEmptyCloud: return "EmptyCloud";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kNoPlaceableObjects: return "NoPlaceableObjects";
    case ErrorCode::kUnknownReference: return "UnknownReference";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kLayoutInfeasible: return "LayoutInfeasible";
    case ErrorCode::kMissingPrior: return "MissingPrior";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kBufferExhausted: return "BufferExhausted";
    case ErrorCode::kPlacementFailure: return "PlacementFailure";
    case ErrorCode::kIdMismatch: return "IdMismatch";
  }
  return "Unknown";
}

std::string error_slug(ErrorCode code) {
  std::string out;
  for (char c : error_name(code)) {
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (!out.empty()) out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Error::Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> index)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail),
      index_(index) {}

}  // namespace sgbot
