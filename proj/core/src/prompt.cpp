#include "agtrack/prompt.hpp"

#include <algorithm>

#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"
#include "json_util.hpp"

namespace agtrack {

std::string_view to_string(Task task) noexcept { return task == Task::Gen ? "gen" : "clf"; }

std::string PromptExample::to_jsonl() const {
  nlohmann::ordered_json doc;
  doc["task"] = std::string(to_string(task));
  doc["input"] = input_text;
  doc["target"] = target_text;
  doc["dialogue_id"] = dialogue_id;
  doc["turn"] = turn_index;
  if (clf_label) doc["clf_label"] = *clf_label;
  return doc.dump();
}

PromptExample parse_prompt_jsonl(std::string_view line) {
  detail::json doc = detail::parse_json(line, "prompt example");
  PromptExample ex;
  std::string task = detail::require_string(doc, "task", "prompt example");
  if (task == "gen") {
    ex.task = Task::Gen;
  } else if (task == "clf") {
    ex.task = Task::Clf;
  } else {
    throw Error(Errc::SchemaViolation, "prompt example: unknown task \"" + task + "\"");
  }
  ex.input_text = detail::require_string(doc, "input", "prompt example");
  ex.target_text = detail::require_string(doc, "target", "prompt example");
  ex.dialogue_id = detail::require_string(doc, "dialogue_id", "prompt example");
  const auto& turn = detail::require(doc, "turn", "prompt example");
  if (!turn.is_number_unsigned()) throw Error(Errc::SchemaViolation, "prompt example: bad \"turn\"");
  ex.turn_index = turn.get<std::size_t>();
  if (auto it = doc.find("clf_label"); it != doc.end()) {
    if (!it->is_boolean()) throw Error(Errc::SchemaViolation, "prompt example: bad \"clf_label\"");
    ex.clf_label = it->get<bool>();
    ex.candidate_is_gold = ex.clf_label;
  }
  return ex;
}

std::string context_window(const AnnotatedDialogue& dialogue, std::size_t turn, std::size_t window) {
  if (window == 0) throw Error(Errc::OutOfRange, "context window must be at least 1");
  if (turn >= dialogue.turns.size()) {
    throw Error(Errc::OutOfRange, "turn " + std::to_string(turn) + " out of range for dialogue \"" +
                                      dialogue.id + "\"");
  }
  const std::size_t count = std::min(window, turn + 1);
  std::string out;
  for (std::size_t i = turn + 1 - count; i <= turn; ++i) {
    const Utterance& u = dialogue.turns[i].utterance;
    if (!out.empty()) out += ' ';
    out += to_string(u.speaker);
    out += ": ";
    out += u.text;
  }
  return out;
}

namespace {

const AgreementState& gold_at(const AnnotatedDialogue& dialogue, std::size_t turn) {
  const auto& gold = dialogue.turns[turn].gold;
  if (!gold) {
    throw Error(Errc::SchemaViolation, "dialogue \"" + dialogue.id + "\" turn " + std::to_string(turn) +
                                           ": missing gold state");
  }
  return *gold;
}

void check_turn(const AnnotatedDialogue& dialogue, std::size_t turn) {
  if (turn >= dialogue.turns.size()) {
    throw Error(Errc::OutOfRange, "turn " + std::to_string(turn) + " out of range for dialogue \"" +
                                      dialogue.id + "\" with " + std::to_string(dialogue.turns.size()) +
                                      " turns");
  }
}

std::string shared_input(std::string_view task_prefix, const AnnotatedDialogue& dialogue,
                         std::size_t turn, const Ontology& ontology, const PromptOptions& options) {
  std::string out(task_prefix);
  out += " [";
  out += options.domain;
  out += ']';
  out += kRegionSeparator;
  out += render_state(previous_gold(dialogue, turn), ontology);
  out += kRegionSeparator;
  out += context_window(dialogue, turn, options.window);
  return out;
}

LevSpan gold_span(const AnnotatedDialogue& dialogue, std::size_t turn, const Ontology& ontology,
                  const PromptOptions& options) {
  return diff(previous_gold(dialogue, turn), gold_at(dialogue, turn), ontology, options.domain);
}

}  // namespace

AgreementState previous_gold(const AnnotatedDialogue& dialogue, std::size_t turn) {
  check_turn(dialogue, turn);
  if (turn == 0) return {};
  return gold_at(dialogue, turn - 1);
}

PromptExample build_gen_example(const AnnotatedDialogue& dialogue, std::size_t turn,
                                const Ontology& ontology, const PromptOptions& options) {
  check_turn(dialogue, turn);
  PromptExample ex;
  ex.task = Task::Gen;
  ex.input_text = shared_input(kGenPrefix, dialogue, turn, ontology, options);
  ex.target_text = render(gold_span(dialogue, turn, ontology, options));
  ex.dialogue_id = dialogue.id;
  ex.turn_index = turn;
  return ex;
}

namespace {

enum class Perturbation { ValueSwap, KindFlip, SlotSwap, SpuriousOp, DropOp };

std::string draw_value(const Ontology& ontology, std::string_view slot, Rng& rng,
                       const std::optional<std::string>& avoid = std::nullopt) {
  auto values = ontology.values(slot);
  std::vector<std::string_view> choices;
  for (const std::string& v : values) {
    if (!avoid || v != *avoid) choices.push_back(v);
  }
  return std::string(choices[rng.uniform(choices.size())]);
}

std::vector<std::string> unused_slots(const Ontology& ontology, const LevSpan& span) {
  std::vector<std::string> out;
  for (const Slot& s : ontology.slots()) {
    bool used = std::any_of(span.ops.begin(), span.ops.end(),
                            [&](const EditOp& op) { return op.slot == s.name; });
    if (!used) out.push_back(s.name);
  }
  return out;
}

}  // namespace

LevSpan sample_negative(const Ontology& ontology, const LevSpan& gold, Rng& rng) {
  std::vector<std::size_t> swappable;  // ops whose value has an ontology alternative
  std::vector<std::size_t> flippable;  // ops whose kind can change
  for (std::size_t i = 0; i < gold.ops.size(); ++i) {
    const EditOp& op = gold.ops[i];
    const bool known = ontology.has_slot(op.slot);
    if (op.value && known && ontology.values(op.slot).size() >= 2) swappable.push_back(i);
    if (op.kind != EditKind::Delete || known) flippable.push_back(i);
  }
  const std::vector<std::string> free_slots = unused_slots(ontology, gold);

  std::vector<Perturbation> options;
  if (!swappable.empty()) options.push_back(Perturbation::ValueSwap);
  if (!flippable.empty()) options.push_back(Perturbation::KindFlip);
  if (!gold.ops.empty() && !free_slots.empty()) options.push_back(Perturbation::SlotSwap);
  if (!free_slots.empty()) options.push_back(Perturbation::SpuriousOp);
  if (!gold.ops.empty()) options.push_back(Perturbation::DropOp);

  LevSpan out = gold;
  switch (options[rng.uniform(options.size())]) {
    case Perturbation::ValueSwap: {
      EditOp& op = out.ops[swappable[rng.uniform(swappable.size())]];
      op.value = draw_value(ontology, op.slot, rng, op.value);
      break;
    }
    case Perturbation::KindFlip: {
      EditOp& op = out.ops[flippable[rng.uniform(flippable.size())]];
      switch (op.kind) {
        case EditKind::Insert:
          if (rng.coin()) {
            op.kind = EditKind::Substitute;
          } else {
            op.kind = EditKind::Delete;
            op.value.reset();
          }
          break;
        case EditKind::Substitute:
          if (rng.coin()) {
            op.kind = EditKind::Insert;
          } else {
            op.kind = EditKind::Delete;
            op.value.reset();
          }
          break;
        case EditKind::Delete:
          op.kind = rng.coin() ? EditKind::Insert : EditKind::Substitute;
          op.value = draw_value(ontology, op.slot, rng);
          break;
      }
      break;
    }
    case Perturbation::SlotSwap: {
      EditOp& op = out.ops[rng.uniform(out.ops.size())];
      op.slot = free_slots[rng.uniform(free_slots.size())];
      if (op.value) op.value = draw_value(ontology, op.slot, rng);
      break;
    }
    case Perturbation::SpuriousOp: {
      EditOp op;
      op.slot = free_slots[rng.uniform(free_slots.size())];
      op.kind = gold.ops.empty() ? EditKind::Insert : static_cast<EditKind>(rng.uniform(3));
      if (op.kind != EditKind::Delete) op.value = draw_value(ontology, op.slot, rng);
      out.ops.push_back(std::move(op));
      break;
    }
    case Perturbation::DropOp:
      out.ops.erase(out.ops.begin() + static_cast<std::ptrdiff_t>(rng.uniform(out.ops.size())));
      break;
  }
  normalize_order(out, ontology);
  return out;
}

PromptExample build_clf_example(const AnnotatedDialogue& dialogue, std::size_t turn,
                                const Ontology& ontology, Rng& rng, const PromptOptions& options) {
  check_turn(dialogue, turn);
  const LevSpan gold = gold_span(dialogue, turn, ontology, options);
  const bool positive = rng.coin();
  const LevSpan candidate = positive ? gold : sample_negative(ontology, gold, rng);

  PromptExample ex;
  ex.task = Task::Clf;
  ex.input_text = shared_input(kClfPrefix, dialogue, turn, ontology, options);
  ex.input_text += kRegionSeparator;
  ex.input_text += render(candidate);
  ex.target_text = positive ? "yes" : "no";
  ex.dialogue_id = dialogue.id;
  ex.turn_index = turn;
  ex.clf_label = positive;
  ex.candidate_is_gold = positive;
  return ex;
}

std::vector<PromptExample> build_dataset(const Corpus& corpus, const Ontology& ontology,
                                         const EmitOptions& options) {
  std::vector<const AnnotatedDialogue*> order;
  order.reserve(corpus.size());
  for (const AnnotatedDialogue& d : corpus) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(),
                   [](const AnnotatedDialogue* a, const AnnotatedDialogue* b) { return a->id < b->id; });

  const PromptOptions prompt{options.window, options.domain};
  std::vector<PromptExample> out;
  for (const AnnotatedDialogue* dialogue : order) {
    Rng rng(derive_seed(options.seed, dialogue->id));
    for (std::size_t t = 0; t < dialogue->turns.size(); ++t) {
      if (options.gen) out.push_back(build_gen_example(*dialogue, t, ontology, prompt));
      if (options.clf) out.push_back(build_clf_example(*dialogue, t, ontology, rng, prompt));
    }
  }
  return out;
}

std::size_t emit_dataset(const Corpus& corpus, const Ontology& ontology, const EmitOptions& options,
                         std::ostream& sink) {
  const std::vector<PromptExample> examples = build_dataset(corpus, ontology, options);
  for (const PromptExample& ex : examples) sink << ex.to_jsonl() << '\n';
  sink.flush();
  if (!sink) throw Error(Errc::Io, "failed writing prompt dataset");
  return examples.size();
}

}  // namespace agtrack
