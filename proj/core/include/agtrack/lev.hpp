#pragma once

// Levenshtein belief spans: slot-level edit scripts between two agreement
// states, with a fixed textual grammar shared with the training pipeline.
//
//   span := "[" domain "]" ( " " op ( " ; " op )* )?
//   op   := "insert " slot " = " value
//         | "delete " slot
//         | "substitute " slot " = " value
//
// Slots and values are canonical (lowercase, single-spaced) and may not
// contain ';', '=', '[' or ']'. Ops are listed in ontology slot order.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agtrack/state.hpp"

namespace agtrack {

class Ontology;

inline constexpr std::string_view kNegochatDomain = "gpt-negochat";
inline constexpr std::string_view kMultiwozDomain = "multiwoz";

/// Domains the strict parser accepts.
bool is_known_domain(std::string_view domain);

enum class EditKind { Insert, Delete, Substitute };

std::string_view to_string(EditKind kind) noexcept;

struct EditOp {
  EditKind kind = EditKind::Insert;
  std::string slot;
  std::optional<std::string> value;  // absent for Delete

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct LevSpan {
  std::string domain{kNegochatDomain};
  std::vector<EditOp> ops;

  bool empty() const noexcept { return ops.empty(); }
  friend bool operator==(const LevSpan&, const LevSpan&) = default;
};

/// Sorts ops into ontology slot order. Does not deduplicate.
void normalize_order(LevSpan& span, const Ontology& ontology);

/// Slot-level edit script turning `prev` into `cur`, in ontology slot order.
LevSpan diff(const AgreementState& prev, const AgreementState& cur,
             const Ontology& ontology, std::string_view domain = kNegochatDomain);

enum class ApplyMode { Lenient, Strict };

/// Lenient: Insert/Substitute overwrite, Delete of a missing slot is a no-op.
/// Strict: Insert on an existing slot or Delete/Substitute on a missing slot
/// throws Errc::ApplyConflict naming the op.
AgreementState apply(const AgreementState& prev, const LevSpan& span,
                     ApplyMode mode = ApplyMode::Lenient);

std::string render(const LevSpan& span);
std::string render(const EditOp& op);

enum class ParseMode { Lenient, Strict };

struct ParseResult {
  LevSpan span;
  /// Fragments that could not be parsed and were dropped (lenient only).
  std::size_t dropped = 0;
  bool missing_prefix = false;

  /// True when the text was not a well-formed span.
  bool defective() const noexcept { return dropped > 0 || missing_prefix; }
};

/// Strict mode throws on any malformation, unknown domain, unknown slot,
/// illegal value, or repeated slot. Lenient mode never throws: it keeps
/// every fragment it can read (unknown slots/values included), drops the
/// rest, and keeps the first op per slot.
ParseResult parse(std::string_view text, const Ontology& ontology,
                  ParseMode mode = ParseMode::Lenient);

/// Strict parse returning just the span.
LevSpan parse_strict(std::string_view text, const Ontology& ontology);

/// Full-state belief form: "slot = value ; slot = value" in ontology order,
/// or "none" for the empty state.
std::string render_state(const AgreementState& state, const Ontology& ontology);

/// Inverse of render_state. Throws Errc::MalformedOp on bad input.
AgreementState parse_state(std::string_view text);

}  // namespace agtrack
