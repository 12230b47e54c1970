#include <algorithm>
#include <iomanip>
#include <sstream>

#include "agtrack/dialogue.hpp"
#include "agtrack/error.hpp"
#include "json_util.hpp"

namespace agtrack {

namespace {

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char ch : text) {
    const bool space = std::isspace(static_cast<unsigned char>(ch)) != 0;
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

double median(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return static_cast<double>(xs[n / 2]);
  return (static_cast<double>(xs[n / 2 - 1]) + static_cast<double>(xs[n / 2])) / 2.0;
}

}  // namespace

StatsReport dialogue_stats(const Corpus& corpus) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "empty corpus");
  StatsReport r;
  r.dialogues = corpus.size();
  std::vector<std::size_t> turn_counts;
  std::size_t tokens = 0;
  for (const AnnotatedDialogue& d : corpus) {
    r.raw_utterances += d.raw_utterance_count();
    r.merged_turns += d.turns.size();
    turn_counts.push_back(d.turns.size());
    for (const Turn& t : d.turns) {
      tokens += count_tokens(t.utterance.text);
      if (t.gold) {
        for (const auto& [slot, value] : t.gold->entries()) ++r.slot_turn_frequency[slot];
      }
    }
    if (!d.turns.empty() && d.turns.back().gold) {
      for (const auto& [slot, value] : d.turns.back().gold->entries()) ++r.slot_final_frequency[slot];
    }
  }
  const auto n = static_cast<double>(r.dialogues);
  r.mean_raw_utterances = static_cast<double>(r.raw_utterances) / n;
  r.mean_merged_turns = static_cast<double>(r.merged_turns) / n;
  r.median_merged_turns = median(turn_counts);
  r.mean_tokens_per_turn =
      r.merged_turns == 0 ? 0.0 : static_cast<double>(tokens) / static_cast<double>(r.merged_turns);
  return r;
}

std::string StatsReport::to_json() const {
  detail::json doc;
  doc["dialogues"] = dialogues;
  doc["raw_utterances"] = raw_utterances;
  doc["merged_turns"] = merged_turns;
  doc["mean_raw_utterances_per_dialogue"] = mean_raw_utterances;
  doc["mean_merged_turns_per_dialogue"] = mean_merged_turns;
  doc["median_merged_turns_per_dialogue"] = median_merged_turns;
  doc["mean_tokens_per_turn"] = mean_tokens_per_turn;
  doc["slot_turn_frequency"] = slot_turn_frequency;
  doc["slot_final_frequency"] = slot_final_frequency;
  return doc.dump(2);
}

void StatsReport::write_table(std::ostream& out) const {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "dialogues                      " << dialogues << '\n'
    << "raw utterances                 " << raw_utterances << '\n'
    << "merged turns                   " << merged_turns << '\n'
    << "mean raw utterances/dialogue   " << mean_raw_utterances << '\n'
    << "mean merged turns/dialogue     " << mean_merged_turns << '\n'
    << "median merged turns/dialogue   " << median_merged_turns << '\n'
    << "mean tokens/turn               " << mean_tokens_per_turn << '\n';
  if (!slot_turn_frequency.empty()) {
    s << "slot                           turns  final\n";
    for (const auto& [slot, count] : slot_turn_frequency) {
      auto it = slot_final_frequency.find(slot);
      s << std::left << std::setw(31) << slot << std::right << std::setw(5) << count << std::setw(7)
        << (it == slot_final_frequency.end() ? 0 : it->second) << '\n';
    }
  }
  out << s.str();
}

}  // namespace agtrack
