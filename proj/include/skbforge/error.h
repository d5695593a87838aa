#ifndef SKBFORGE_ERROR_H_
#define SKBFORGE_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skbforge {

enum class ErrorCode {
  kInvalidLemma,
  kInvalidConfig,
  kIo,
  // ingestion
  kMalformedLine,
  kDuplicateSenseId,
  kEmptyDefinition,
  kMissingSenseId,
  kCyclicHeads,
  kNonContiguousIndices,
  kEmptyList,
  kDimMismatch,
  kNonFiniteValue,
  kVersionMismatch,
  // lexicon
  kUnknownSememe,
  kEmptySkb,
  // sememe set
  kEmptyResult,
  kNoAnnotations,
  kDegenerateTrim,
  // extraction / distillation
  kMissingParse,
  kSememeNotInTokens,
  // consistency evaluation
  kTooSmall,
  kNoEmbedding,
  kEmptyTrain,
  kEmptyGold,
  kNoUsableSenses,
  // substitution
  kUnknownWord,
};

std::string_view error_code_name(ErrorCode code);

// Every failure the library reports. `line()` is the 1-based input line for
// parser errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> line() const { return line_; }
  const std::string& detail() const { return detail_; }
  bool is_io() const { return code_ == ErrorCode::kIo; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

}  // namespace skbforge

#endif  // SKBFORGE_ERROR_H_
