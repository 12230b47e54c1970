#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agtrack/state.hpp"

namespace agtrack {

class Ontology;

enum class Speaker { Employer, Candidate };

std::string_view to_string(Speaker speaker) noexcept;
std::optional<Speaker> parse_speaker(std::string_view text);
inline Speaker other(Speaker s) noexcept {
  return s == Speaker::Employer ? Speaker::Candidate : Speaker::Employer;
}

struct Utterance {
  Speaker speaker = Speaker::Employer;
  std::string text;
  std::size_t index = 0;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

/// Merges runs of same-speaker utterances into one, joining their texts with
/// a single space, and re-indexes from 0. Throws Errc::EmptyInput on an empty
/// list.
std::vector<Utterance> merge_consecutive(const std::vector<Utterance>& utterances);

using SlotValuePair = std::pair<std::string, std::string>;

enum class ActKind { Offer, Accept, Reject, Other };

std::string_view to_string(ActKind kind) noexcept;
std::optional<ActKind> parse_act_kind(std::string_view text);

/// A dialogue act. Offers always carry pairs; Accept/Reject may carry pairs
/// to scope a partial response; Other never does.
struct DialogueAct {
  ActKind kind = ActKind::Other;
  std::vector<SlotValuePair> pairs;

  /// Checks the payload rules and that no slot repeats. Throws
  /// Errc::SchemaViolation.
  void validate() const;

  static DialogueAct offer(std::vector<SlotValuePair> pairs);
  static DialogueAct accept(std::vector<SlotValuePair> pairs = {});
  static DialogueAct reject(std::vector<SlotValuePair> pairs = {});
  static DialogueAct other();

  friend bool operator==(const DialogueAct&, const DialogueAct&) = default;
};

struct Turn {
  Utterance utterance;
  /// Absent when the corpus carries no act annotation for this turn.
  std::optional<std::vector<DialogueAct>> acts;
  /// Absent when the corpus carries no gold state for this turn.
  std::optional<AgreementState> gold;
  /// Raw corpus utterances merged into this turn.
  std::size_t raw_utterances = 1;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct AnnotatedDialogue {
  std::string id;
  std::vector<Turn> turns;

  std::size_t raw_utterance_count() const;
  friend bool operator==(const AnnotatedDialogue&, const AnnotatedDialogue&) = default;
};

using Corpus = std::vector<AnnotatedDialogue>;

/// Surface-form aliases: slot aliases ("company car" -> "leased car") and
/// per-slot value aliases ("90,000" -> "90k usd"). Keys are canonical.
class AliasTable {
 public:
  AliasTable() = default;

  void add_slot_alias(std::string_view alias, std::string_view slot);
  void add_value_alias(std::string_view slot, std::string_view alias, std::string_view value);

  /// Canonical ontology slot for a surface slot name, or nullopt.
  std::optional<std::string> resolve_slot(const Ontology& ontology, std::string_view surface) const;

  /// Canonical ontology value when the surface form or a registered alias
  /// matches; otherwise the canonicalized surface. Throws Errc::UnknownSlot
  /// when `slot` does not resolve to an ontology slot.
  std::string resolve_value(const Ontology& ontology, std::string_view slot,
                            std::string_view surface) const;

  bool empty() const noexcept { return slots_.empty() && values_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> slots_;
  std::map<std::string, std::map<std::string, std::string, std::less<>>, std::less<>> values_;
};

/// Parses {"slots": {alias: slot}, "values": {slot: {alias: value}}}.
AliasTable load_aliases(std::istream& in);
AliasTable load_aliases_text(std::string_view json);

/// The alias table shipped with the built-in ontology.
const AliasTable& gpt_negochat_aliases();

/// Free-function form of AliasTable::resolve_value.
std::string resolve_alias(const Ontology& ontology, const AliasTable& aliases,
                          std::string_view slot, std::string_view surface);

struct LoadDiagnostic {
  std::string dialogue_id;
  std::size_t turn = 0;
  std::string slot;
  std::string value;
  std::string message;
};

struct LoadReport {
  std::size_t dialogues = 0;
  std::size_t raw_utterances = 0;
  std::vector<LoadDiagnostic> warnings;

  bool clean() const noexcept { return warnings.empty(); }
  /// Line-oriented diagnostics, one per warning.
  void write_lines(std::ostream& out) const;
  std::string to_json() const;
};

struct LoadOptions {
  bool strict = true;
  const AliasTable* aliases = nullptr;  // defaults to none
};

/// Parses the corpus schema, merges same-speaker runs, resolves slot and
/// value aliases in acts and states, and validates against the ontology.
/// Strict mode throws Errc::OntologyViolation naming dialogue, turn, and
/// slot; lenient mode keeps the value and records a warning.
Corpus load_corpus(std::istream& in, const Ontology& ontology,
                   const LoadOptions& options = {}, LoadReport* report = nullptr);
Corpus load_corpus_text(std::string_view json, const Ontology& ontology,
                        const LoadOptions& options = {}, LoadReport* report = nullptr);

/// Writes the corpus schema. Merged turns are written as single entries.
std::string serialize_corpus(const Corpus& corpus);

struct StatsReport {
  std::size_t dialogues = 0;
  std::size_t raw_utterances = 0;
  std::size_t merged_turns = 0;
  double mean_raw_utterances = 0.0;
  double mean_merged_turns = 0.0;
  double median_merged_turns = 0.0;
  double mean_tokens_per_turn = 0.0;
  /// Per slot: turns whose gold state carries the slot.
  std::map<std::string, std::size_t> slot_turn_frequency;
  /// Per slot: dialogues whose final gold state carries the slot.
  std::map<std::string, std::size_t> slot_final_frequency;

  std::string to_json() const;
  void write_table(std::ostream& out) const;
};

/// Throws Errc::EmptyCorpus on an empty corpus.
StatsReport dialogue_stats(const Corpus& corpus);

}  // namespace agtrack
