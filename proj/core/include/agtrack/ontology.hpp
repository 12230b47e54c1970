#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agtrack {

/// Lowercases (ASCII), trims, and collapses internal whitespace runs to a
/// single space. Throws Errc::EmptyInput when nothing is left after trimming.
std::string canonicalize(std::string_view text);

struct Slot {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Closed slot-value ontology. Slots keep declaration order; every name and
/// value is stored in canonical form. Immutable once constructed.
class Ontology {
 public:
  /// Validates and canonicalizes. Throws on an empty slot list, duplicate
  /// slots, empty value lists, or duplicate values within a slot.
  Ontology(std::string name, std::vector<Slot> slots);

  const std::string& name() const noexcept { return name_; }
  std::span<const Slot> slots() const noexcept { return slots_; }
  std::size_t size() const noexcept { return slots_.size(); }

  /// Declaration index of a slot, accepting non-canonical spellings.
  std::optional<std::size_t> slot_index(std::string_view slot) const;
  bool has_slot(std::string_view slot) const { return slot_index(slot).has_value(); }

  /// Legal values of a slot; throws Errc::UnknownSlot.
  std::span<const std::string> values(std::string_view slot) const;

  /// True iff the canonical slot exists and lists the canonical value.
  /// Never throws: blank or unknown inputs are simply illegal.
  bool is_legal(std::string_view slot, std::string_view value) const;

  /// Serializes to the ontology JSON schema.
  std::string to_json() const;

  friend bool operator==(const Ontology&, const Ontology&) = default;

 private:
  std::string name_;
  std::vector<Slot> slots_;
};

/// Parses an ontology document: {"name": ..., "slots": [{"name": ..., "values": [...]}, ...]}.
/// Error messages name the offending slot and its position in the document.
Ontology load_ontology(std::istream& in);
Ontology load_ontology_text(std::string_view json);

/// The six-slot job-negotiation ontology, embedded at build time.
const Ontology& gpt_negochat_ontology();

}  // namespace agtrack
