#include "agtrack/error.hpp"

namespace agtrack {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "empty input";
    case Errc::SchemaViolation: return "schema violation";
    case Errc::EmptyOntology: return "empty ontology";
    case Errc::DuplicateSlot: return "duplicate slot";
    case Errc::DuplicateValue: return "duplicate value";
    case Errc::EmptyValueList: return "empty value list";
    case Errc::UnknownSlot: return "unknown slot";
    case Errc::EmptyDialogue: return "empty dialogue";
    case Errc::EmptyCorpus: return "empty corpus";
    case Errc::OntologyViolation: return "ontology violation";
    case Errc::MissingActs: return "missing act annotations";
    case Errc::MissingDomainPrefix: return "missing domain prefix";
    case Errc::UnknownDomain: return "unknown domain";
    case Errc::MalformedOp: return "malformed op";
    case Errc::UnknownOpKeyword: return "unknown op keyword";
    case Errc::MissingValue: return "missing value";
    case Errc::IllegalValue: return "illegal value";
    case Errc::DuplicateOpSlot: return "duplicate op slot";
    case Errc::ApplyConflict: return "apply conflict";
    case Errc::OutOfRange: return "out of range";
    case Errc::Misaligned: return "misaligned inputs";
    case Errc::CorpusTooSmall: return "corpus too small";
    case Errc::InvalidFraction: return "invalid fraction";
    case Errc::Io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace agtrack
