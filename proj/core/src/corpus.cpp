#include <iterator>
#include <set>
#include <sstream>

#include "agtrack/dialogue.hpp"
#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"
#include "json_util.hpp"

namespace agtrack {

namespace {

using detail::json;

struct Resolver {
  const Ontology& ontology;
  const AliasTable& aliases;
  bool strict;
  LoadReport* report;

  std::string location(const std::string& id, std::size_t turn) const {
    return "dialogue \"" + id + "\" turn " + std::to_string(turn);
  }

  void flag(const std::string& id, std::size_t turn, const std::string& slot,
            const std::string& value, const std::string& message) const {
    if (strict) {
      throw Error(Errc::OntologyViolation, location(id, turn) + ": " + message);
    }
    if (report) report->warnings.push_back({id, turn, slot, value, message});
  }

  SlotValuePair resolve(const std::string& id, std::size_t turn, std::string_view slot_text,
                        std::string_view value_text) const {
    std::string slot;
    std::string value;
    try {
      slot = canonicalize(slot_text);
      value = canonicalize(value_text);
    } catch (const Error&) {
      throw Error(Errc::SchemaViolation, location(id, turn) + ": empty slot or value");
    }
    auto canonical_slot = aliases.resolve_slot(ontology, slot);
    if (!canonical_slot) {
      flag(id, turn, slot, value, "unknown slot \"" + slot + "\"");
      return {slot, value};
    }
    value = aliases.resolve_value(ontology, *canonical_slot, value);
    if (!ontology.is_legal(*canonical_slot, value)) {
      flag(id, turn, *canonical_slot, value,
           "value \"" + value + "\" is not legal for slot \"" + *canonical_slot + "\"");
    }
    return {*canonical_slot, value};
  }
};

std::vector<DialogueAct> read_acts(const json& acts_doc, const std::string& id, std::size_t turn,
                                   const Resolver& resolver) {
  const std::string where = resolver.location(id, turn);
  if (!acts_doc.is_array()) throw Error(Errc::SchemaViolation, where + ": \"acts\" must be an array");
  std::vector<DialogueAct> acts;
  for (const json& act_doc : acts_doc) {
    std::string kind_text = detail::require_string(act_doc, "kind", where + " act");
    auto kind = parse_act_kind(canonicalize(kind_text));
    if (!kind) throw Error(Errc::SchemaViolation, where + ": unknown act kind \"" + kind_text + "\"");
    DialogueAct act{*kind, {}};
    if (auto it = act_doc.find("pairs"); it != act_doc.end()) {
      if (!it->is_array()) throw Error(Errc::SchemaViolation, where + ": \"pairs\" must be an array");
      for (const json& pair : *it) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
          throw Error(Errc::SchemaViolation, where + ": each pair must be [slot, value]");
        }
        act.pairs.push_back(resolver.resolve(id, turn, pair[0].get<std::string>(), pair[1].get<std::string>()));
      }
    }
    try {
      act.validate();
    } catch (const Error& e) {
      throw Error(Errc::SchemaViolation, where + ": " + e.what());
    }
    acts.push_back(std::move(act));
  }
  return acts;
}

AgreementState read_state(const json& state_doc, const std::string& id, std::size_t turn,
                          const Resolver& resolver) {
  const std::string where = resolver.location(id, turn);
  if (!state_doc.is_object()) throw Error(Errc::SchemaViolation, where + ": \"state\" must be an object");
  AgreementState state;
  for (const auto& [slot, value] : state_doc.items()) {
    if (!value.is_string()) {
      throw Error(Errc::SchemaViolation, where + ": state value for \"" + slot + "\" must be a string");
    }
    auto [s, v] = resolver.resolve(id, turn, slot, value.get<std::string>());
    if (state.contains(s)) {
      throw Error(Errc::SchemaViolation, where + ": slot \"" + s + "\" appears twice in state");
    }
    state.set(std::move(s), std::move(v));
  }
  return state;
}

}  // namespace

Corpus load_corpus_text(std::string_view text, const Ontology& ontology,
                        const LoadOptions& options, LoadReport* report) {
  static const AliasTable kNoAliases;
  Resolver resolver{ontology, options.aliases ? *options.aliases : kNoAliases, options.strict, report};

  json doc = detail::parse_json(text, "corpus");
  const json& dialogues_doc = detail::require(doc, "dialogues", "corpus");
  if (!dialogues_doc.is_array()) throw Error(Errc::SchemaViolation, "corpus: \"dialogues\" must be an array");

  Corpus corpus;
  std::set<std::string> ids;
  for (std::size_t d = 0; d < dialogues_doc.size(); ++d) {
    const json& dialogue_doc = dialogues_doc[d];
    const std::string where = "corpus dialogues[" + std::to_string(d) + "]";
    AnnotatedDialogue dialogue;
    dialogue.id = detail::require_string(dialogue_doc, "id", where);
    if (!ids.insert(dialogue.id).second) {
      throw Error(Errc::SchemaViolation, where + ": duplicate dialogue id \"" + dialogue.id + "\"");
    }
    const json& turns_doc = detail::require(dialogue_doc, "turns", where);
    if (!turns_doc.is_array()) throw Error(Errc::SchemaViolation, where + ": \"turns\" must be an array");
    if (turns_doc.empty()) throw Error(Errc::EmptyDialogue, "empty dialogue \"" + dialogue.id + "\"");

    for (std::size_t t = 0; t < turns_doc.size(); ++t) {
      const json& turn_doc = turns_doc[t];
      const std::string turn_where = resolver.location(dialogue.id, t);
      std::string speaker_text = detail::require_string(turn_doc, "speaker", turn_where);
      auto speaker = parse_speaker(speaker_text);
      if (!speaker) throw Error(Errc::SchemaViolation, turn_where + ": unknown speaker \"" + speaker_text + "\"");
      std::string utterance_text = detail::require_string(turn_doc, "text", turn_where);
      if (utterance_text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw Error(Errc::SchemaViolation, turn_where + ": empty utterance text");
      }

      Turn turn;
      turn.utterance = {*speaker, utterance_text, 0};
      if (auto it = turn_doc.find("acts"); it != turn_doc.end()) {
        turn.acts = read_acts(*it, dialogue.id, t, resolver);
      }
      if (auto it = turn_doc.find("state"); it != turn_doc.end()) {
        turn.gold = read_state(*it, dialogue.id, t, resolver);
      }
      if (auto it = turn_doc.find("raw_utterances"); it != turn_doc.end()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
          throw Error(Errc::SchemaViolation, turn_where + ": \"raw_utterances\" must be a positive integer");
        }
        turn.raw_utterances = it->get<std::size_t>();
      }

      // Same-speaker runs collapse into one turn: texts joined by a space,
      // acts concatenated, the latest gold state wins.
      if (!dialogue.turns.empty() && dialogue.turns.back().utterance.speaker == *speaker) {
        Turn& last = dialogue.turns.back();
        last.utterance.text += ' ';
        last.utterance.text += turn.utterance.text;
        if (last.acts && turn.acts) {
          last.acts->insert(last.acts->end(), turn.acts->begin(), turn.acts->end());
        } else {
          last.acts.reset();
        }
        if (turn.gold) last.gold = std::move(turn.gold);
        last.raw_utterances += turn.raw_utterances;
      } else {
        turn.utterance.index = dialogue.turns.size();
        dialogue.turns.push_back(std::move(turn));
      }
    }
    if (report) {
      report->raw_utterances += dialogue.raw_utterance_count();
      ++report->dialogues;
    }
    corpus.push_back(std::move(dialogue));
  }
  return corpus;
}

Corpus load_corpus(std::istream& in, const Ontology& ontology, const LoadOptions& options,
                   LoadReport* report) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_corpus_text(text, ontology, options, report);
}

std::string serialize_corpus(const Corpus& corpus) {
  json dialogues = json::array();
  for (const AnnotatedDialogue& dialogue : corpus) {
    json turns = json::array();
    for (const Turn& turn : dialogue.turns) {
      json t;
      t["speaker"] = std::string(to_string(turn.utterance.speaker));
      t["text"] = turn.utterance.text;
      if (turn.acts) {
        json acts = json::array();
        for (const DialogueAct& act : *turn.acts) {
          json a;
          a["kind"] = std::string(to_string(act.kind));
          if (!act.pairs.empty()) {
            a["pairs"] = json::array();
            for (const auto& [slot, value] : act.pairs) a["pairs"].push_back({slot, value});
          }
          acts.push_back(std::move(a));
        }
        t["acts"] = std::move(acts);
      }
      if (turn.gold) {
        json state = json::object();
        for (const auto& [slot, value] : turn.gold->entries()) state[slot] = value;
        t["state"] = std::move(state);
      }
      if (turn.raw_utterances > 1) t["raw_utterances"] = turn.raw_utterances;
      turns.push_back(std::move(t));
    }
    dialogues.push_back({{"id", dialogue.id}, {"turns", std::move(turns)}});
  }
  json doc;
  doc["dialogues"] = std::move(dialogues);
  return doc.dump(1);
}

void LoadReport::write_lines(std::ostream& out) const {
  for (const LoadDiagnostic& w : warnings) {
    out << "warning: dialogue " << w.dialogue_id << " turn " << w.turn << ": " << w.message << '\n';
  }
}

std::string LoadReport::to_json() const {
  json doc;
  doc["dialogues"] = dialogues;
  doc["raw_utterances"] = raw_utterances;
  doc["warnings"] = json::array();
  for (const LoadDiagnostic& w : warnings) {
    doc["warnings"].push_back({{"dialogue_id", w.dialogue_id},
                               {"turn", w.turn},
                               {"slot", w.slot},
                               {"value", w.value},
                               {"message", w.message}});
  }
  return doc.dump(2);
}

}  // namespace agtrack
