#include "skbforge/error.h"

namespace skbforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidLemma: return "InvalidLemma";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateSenseId: return "DuplicateSenseId";
    case ErrorCode::kEmptyDefinition: return "EmptyDefinition";
    case ErrorCode::kMissingSenseId: return "MissingSenseId";
    case ErrorCode::kCyclicHeads: return "CyclicHeads";
    case ErrorCode::kNonContiguousIndices: return "NonContiguousIndices";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kUnknownSememe: return "UnknownSememe";
    case ErrorCode::kEmptySkb: return "EmptySkb";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kNoAnnotations: return "NoAnnotations";
    case ErrorCode::kDegenerateTrim: return "DegenerateTrim";
    case ErrorCode::kMissingParse: return "MissingParse";
    case ErrorCode::kSememeNotInTokens: return "SememeNotInTokens";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kNoEmbedding: return "NoEmbedding";
    case ErrorCode::kEmptyTrain: return "EmptyTrain";
    case ErrorCode::kEmptyGold: return "EmptyGold";
    case ErrorCode::kNoUsableSenses: return "NoUsableSenses";
    case ErrorCode::kUnknownWord: return "UnknownWord";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::optional<std::size_t> line) {
  std::string out(error_code_name(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      detail_(message),
      line_(line) {}

}  // namespace skbforge
