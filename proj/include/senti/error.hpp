#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace senti {

enum class ErrorKind {
  MissingColumn,
  MalformedRow,
  UnknownLabel,
  EmptyCorpus,
  EmptyVocabulary,
  ZeroClassCount,
  DegenerateData,
  NonFinite,
  LengthMismatch,
  OrdinalOutOfRange,
  EmptyMatrix,
  IoError,
  UnsupportedVersion,
  CorruptEnvelope,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorKind::ZeroClassCount: return "ZeroClassCount";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OrdinalOutOfRange: return "OrdinalOutOfRange";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorKind::CorruptEnvelope: return "CorruptEnvelope";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable
/// discriminator; `row()` is set when the failure is tied to an input row
/// (0-based data row, header excluded).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        row_(row) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

  /// Data errors map to exit code 2, numeric failures to 3.
  bool is_numeric() const noexcept { return kind_ == ErrorKind::NonFinite; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
};

}  // namespace senti
