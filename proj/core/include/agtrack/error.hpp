#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agtrack {

/// Error categories raised across the library. The CLI maps every one of
/// these to exit code 1 (data/validation error).
enum class Errc {
  // ontology
  EmptyInput,
  SchemaViolation,
  EmptyOntology,
  DuplicateSlot,
  DuplicateValue,
  EmptyValueList,
  UnknownSlot,
  // corpus
  EmptyDialogue,
  EmptyCorpus,
  OntologyViolation,
  MissingActs,
  // lev grammar
  MissingDomainPrefix,
  UnknownDomain,
  MalformedOp,
  UnknownOpKeyword,
  MissingValue,
  IllegalValue,
  DuplicateOpSlot,
  ApplyConflict,
  // prompt / metrics / splits
  OutOfRange,
  Misaligned,
  CorpusTooSmall,
  InvalidFraction,
  Io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace agtrack
