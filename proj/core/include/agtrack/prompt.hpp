#pragma once

// Seq2seq training instances for agreement tracking.
//
// Gen input:  "track agreements: [gpt-negochat] | <previous state> | <context>"
// Gen target: "[gpt-negochat] <edit ops>"
// Clf input:  "verify agreements: [gpt-negochat] | <previous state> | <context> | <candidate span>"
// Clf target: "yes" | "no"
//
// <previous state> is render_state() of the gold state before the turn
// ("none" when empty); <context> is the last `window` merged utterances, each
// tagged "employer: " or "candidate: ", joined by single spaces.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "agtrack/dialogue.hpp"
#include "agtrack/lev.hpp"
#include "agtrack/rng.hpp"

namespace agtrack {

class Ontology;

inline constexpr std::string_view kGenPrefix = "track agreements:";
inline constexpr std::string_view kClfPrefix = "verify agreements:";
inline constexpr std::string_view kRegionSeparator = " | ";
inline constexpr std::size_t kDefaultWindow = 3;

enum class Task { Gen, Clf };

std::string_view to_string(Task task) noexcept;

struct PromptExample {
  Task task = Task::Gen;
  std::string input_text;
  std::string target_text;
  std::string dialogue_id;
  std::size_t turn_index = 0;
  std::optional<bool> clf_label;
  std::optional<bool> candidate_is_gold;

  /// One JSONL record: {"task","input","target","dialogue_id","turn","clf_label"?}.
  std::string to_jsonl() const;

  friend bool operator==(const PromptExample&, const PromptExample&) = default;
};

PromptExample parse_prompt_jsonl(std::string_view line);

struct PromptOptions {
  std::size_t window = kDefaultWindow;
  std::string domain{kNegochatDomain};
};

/// The last min(window, turn + 1) merged utterances ending at `turn`,
/// speaker-tagged.
std::string context_window(const AnnotatedDialogue& dialogue, std::size_t turn, std::size_t window);

/// Gold state before `turn`; the empty state for turn 0.
AgreementState previous_gold(const AnnotatedDialogue& dialogue, std::size_t turn);

/// Throws Errc::OutOfRange for a turn past the end, Errc::SchemaViolation
/// when a gold state is missing.
PromptExample build_gen_example(const AnnotatedDialogue& dialogue, std::size_t turn,
                                const Ontology& ontology, const PromptOptions& options = {});

/// A span that differs from `gold` once rendered, built by one perturbation
/// drawn uniformly from those applicable: value swap, op-kind flip, slot
/// swap, spurious op, op drop. Slots and values come from the ontology.
LevSpan sample_negative(const Ontology& ontology, const LevSpan& gold, Rng& rng);

/// Positive (gold span, "yes") or negative (sampled span, "no") with equal
/// probability.
PromptExample build_clf_example(const AnnotatedDialogue& dialogue, std::size_t turn,
                                const Ontology& ontology, Rng& rng,
                                const PromptOptions& options = {});

struct EmitOptions {
  bool gen = true;
  bool clf = false;
  std::size_t window = kDefaultWindow;
  std::string domain{kNegochatDomain};
  std::uint64_t seed = 13;
};

/// Writes one JSONL line per example, dialogues sorted by id, Gen before Clf
/// within each turn. Each dialogue draws from its own seed derived from
/// `seed` and the dialogue id. Returns the number of lines written.
std::size_t emit_dataset(const Corpus& corpus, const Ontology& ontology,
                         const EmitOptions& options, std::ostream& sink);

/// Same, as a vector.
std::vector<PromptExample> build_dataset(const Corpus& corpus, const Ontology& ontology,
                                         const EmitOptions& options);

}  // namespace agtrack
