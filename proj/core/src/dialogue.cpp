#include "agtrack/dialogue.hpp"

#include <iterator>
#include <set>

#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"
#include "embedded.hpp"
#include "json_util.hpp"

namespace agtrack {

std::string_view to_string(Speaker speaker) noexcept {
  return speaker == Speaker::Employer ? "employer" : "candidate";
}

std::optional<Speaker> parse_speaker(std::string_view text) {
  std::string key;
  try {
    key = canonicalize(text);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (key == "employer" || key == "e") return Speaker::Employer;
  if (key == "candidate" || key == "c") return Speaker::Candidate;
  return std::nullopt;
}

std::vector<Utterance> merge_consecutive(const std::vector<Utterance>& utterances) {
  if (utterances.empty()) throw Error(Errc::EmptyInput, "merge_consecutive: empty utterance list");
  std::vector<Utterance> merged;
  for (const Utterance& u : utterances) {
    if (!merged.empty() && merged.back().speaker == u.speaker) {
      merged.back().text += ' ';
      merged.back().text += u.text;
    } else {
      merged.push_back({u.speaker, u.text, merged.size()});
    }
  }
  return merged;
}

std::string_view to_string(ActKind kind) noexcept {
  switch (kind) {
    case ActKind::Offer: return "offer";
    case ActKind::Accept: return "accept";
    case ActKind::Reject: return "reject";
    case ActKind::Other: return "other";
  }
  return "?";
}

std::optional<ActKind> parse_act_kind(std::string_view text) {
  if (text == "offer") return ActKind::Offer;
  if (text == "accept") return ActKind::Accept;
  if (text == "reject") return ActKind::Reject;
  if (text == "other") return ActKind::Other;
  return std::nullopt;
}

void DialogueAct::validate() const {
  if (kind == ActKind::Offer && pairs.empty()) {
    throw Error(Errc::SchemaViolation, "offer act without slot-value pairs");
  }
  if (kind == ActKind::Other && !pairs.empty()) {
    throw Error(Errc::SchemaViolation, "other act must not carry slot-value pairs");
  }
  std::set<std::string_view> slots;
  for (const auto& [slot, value] : pairs) {
    if (!slots.insert(slot).second) {
      throw Error(Errc::SchemaViolation, "slot \"" + slot + "\" appears twice in one " +
                                             std::string(to_string(kind)) + " act");
    }
  }
}

DialogueAct DialogueAct::offer(std::vector<SlotValuePair> pairs) {
  DialogueAct act{ActKind::Offer, std::move(pairs)};
  act.validate();
  return act;
}
DialogueAct DialogueAct::accept(std::vector<SlotValuePair> pairs) {
  DialogueAct act{ActKind::Accept, std::move(pairs)};
  act.validate();
  return act;
}
DialogueAct DialogueAct::reject(std::vector<SlotValuePair> pairs) {
  DialogueAct act{ActKind::Reject, std::move(pairs)};
  act.validate();
  return act;
}
DialogueAct DialogueAct::other() { return DialogueAct{ActKind::Other, {}}; }

std::size_t AnnotatedDialogue::raw_utterance_count() const {
  std::size_t n = 0;
  for (const Turn& t : turns) n += t.raw_utterances;
  return n;
}

void AliasTable::add_slot_alias(std::string_view alias, std::string_view slot) {
  slots_.insert_or_assign(canonicalize(alias), canonicalize(slot));
}

void AliasTable::add_value_alias(std::string_view slot, std::string_view alias, std::string_view value) {
  values_[canonicalize(slot)].insert_or_assign(canonicalize(alias), canonicalize(value));
}

std::optional<std::string> AliasTable::resolve_slot(const Ontology& ontology, std::string_view surface) const {
  std::string key;
  try {
    key = canonicalize(surface);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (ontology.has_slot(key)) return key;
  auto it = slots_.find(key);
  if (it != slots_.end() && ontology.has_slot(it->second)) return it->second;
  return std::nullopt;
}

std::string AliasTable::resolve_value(const Ontology& ontology, std::string_view slot,
                                      std::string_view surface) const {
  auto canonical_slot = resolve_slot(ontology, slot);
  if (!canonical_slot) {
    throw Error(Errc::UnknownSlot, "unknown slot \"" + std::string(slot) + "\"");
  }
  std::string value = canonicalize(surface);
  if (ontology.is_legal(*canonical_slot, value)) return value;
  auto per_slot = values_.find(*canonical_slot);
  if (per_slot != values_.end()) {
    auto it = per_slot->second.find(value);
    if (it != per_slot->second.end()) return it->second;
  }
  return value;
}

std::string resolve_alias(const Ontology& ontology, const AliasTable& aliases,
                          std::string_view slot, std::string_view surface) {
  return aliases.resolve_value(ontology, slot, surface);
}

AliasTable load_aliases_text(std::string_view text) {
  using detail::json;
  json doc = detail::parse_json(text, "aliases");
  if (!doc.is_object()) throw Error(Errc::SchemaViolation, "aliases: expected an object");
  AliasTable table;
  if (auto it = doc.find("slots"); it != doc.end()) {
    if (!it->is_object()) throw Error(Errc::SchemaViolation, "aliases: \"slots\" must be an object");
    for (const auto& [alias, slot] : it->items()) {
      if (!slot.is_string()) {
        throw Error(Errc::SchemaViolation, "aliases: slot alias \"" + alias + "\" must map to a string");
      }
      table.add_slot_alias(alias, slot.get<std::string>());
    }
  }
  if (auto it = doc.find("values"); it != doc.end()) {
    if (!it->is_object()) throw Error(Errc::SchemaViolation, "aliases: \"values\" must be an object");
    for (const auto& [slot, entries] : it->items()) {
      if (!entries.is_object()) {
        throw Error(Errc::SchemaViolation, "aliases: values of \"" + slot + "\" must be an object");
      }
      for (const auto& [alias, value] : entries.items()) {
        if (!value.is_string()) {
          throw Error(Errc::SchemaViolation,
                      "aliases: \"" + slot + "\" alias \"" + alias + "\" must map to a string");
        }
        table.add_value_alias(slot, alias, value.get<std::string>());
      }
    }
  }
  return table;
}

AliasTable load_aliases(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_aliases_text(text);
}

const AliasTable& gpt_negochat_aliases() {
  static const AliasTable table = load_aliases_text(detail::kAliasesJson);
  return table;
}

}  // namespace agtrack
