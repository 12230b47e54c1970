#include "agtrack/tracker.hpp"

#include "agtrack/error.hpp"

namespace agtrack {

std::string_view to_string(TrackerEvent event) noexcept {
  switch (event) {
    case TrackerEvent::UnmatchedAccept: return "unmatched-accept";
    case TrackerEvent::UnmatchedReject: return "unmatched-reject";
    case TrackerEvent::NothingToAccept: return "nothing-to-accept";
    case TrackerEvent::NothingToReject: return "nothing-to-reject";
    case TrackerEvent::FrozenSlot: return "frozen-slot";
  }
  return "?";
}

namespace {

class TurnStepper {
 public:
  TurnStepper(TrackerState& state, Speaker speaker, const TrackerConfig& config,
              std::vector<TrackerDiagnostic>* diagnostics)
      : s_(state), speaker_(speaker), other_(other(speaker)), config_(config), diagnostics_(diagnostics) {}

  void apply(const DialogueAct& act) {
    switch (act.kind) {
      case ActKind::Offer:
        for (const auto& [slot, value] : act.pairs) offer(slot, value);
        break;
      case ActKind::Accept:
        if (act.pairs.empty()) {
          accept_all();
        } else {
          for (const auto& [slot, value] : act.pairs) accept(slot, value);
        }
        break;
      case ActKind::Reject:
        if (act.pairs.empty()) {
          reject_all();
        } else {
          for (const auto& [slot, value] : act.pairs) reject(slot, value);
        }
        break;
      case ActKind::Other:
        break;
    }
  }

 private:
  std::size_t turn() const { return s_.turn_index; }

  void note(TrackerEvent event, const std::string& slot = {}, const std::string& value = {}) {
    if (diagnostics_) diagnostics_->push_back({turn(), speaker_, event, slot, value});
  }

  void offer(const std::string& slot, const std::string& value) {
    if (auto agreed = s_.agreements.get(slot)) {
      // Restating the agreed value leaves the agreement in place.
      if (*agreed == value) return;
      if (config_.freeze_agreed) {
        note(TrackerEvent::FrozenSlot, slot, value);
        return;
      }
      s_.agreements.erase(slot);
      s_.provenance.erase(slot);
    }
    s_.pending.of(speaker_).insert_or_assign(slot, OfferRecord{value, turn()});
    s_.last_offers.of(speaker_).insert_or_assign(slot, OfferRecord{value, turn()});
  }

  void agree(const std::string& slot, const OfferRecord& offer) {
    s_.agreements.set(slot, offer.value);
    s_.provenance.insert_or_assign(slot, Provenance{offer.value, other_, offer.turn, turn()});
    s_.pending.employer.erase(slot);
    s_.pending.candidate.erase(slot);
  }

  void accept(const std::string& slot, const std::string& value) {
    const OfferMap& pending = s_.pending.of(other_);
    if (auto it = pending.find(slot); it != pending.end() && it->second.value == value) {
      agree(slot, OfferRecord(it->second));
      return;
    }
    const OfferMap& last = s_.last_offers.of(other_);
    if (auto it = last.find(slot); it != last.end() && it->second.value == value) {
      agree(slot, OfferRecord(it->second));
      return;
    }
    note(TrackerEvent::UnmatchedAccept, slot, value);
  }

  void accept_all() {
    const OfferMap pending = s_.pending.of(other_);
    if (pending.empty()) {
      note(TrackerEvent::NothingToAccept);
      return;
    }
    for (const auto& [slot, offer] : pending) agree(slot, offer);
  }

  void reject(const std::string& slot, const std::string& value) {
    if (s_.pending.of(other_).erase(slot) == 0) note(TrackerEvent::UnmatchedReject, slot, value);
  }

  void reject_all() {
    OfferMap& pending = s_.pending.of(other_);
    if (pending.empty()) {
      note(TrackerEvent::NothingToReject);
      return;
    }
    pending.clear();
  }

  TrackerState& s_;
  Speaker speaker_;
  Speaker other_;
  const TrackerConfig& config_;
  std::vector<TrackerDiagnostic>* diagnostics_;
};

}  // namespace

TrackerState step(const TrackerState& state, Speaker speaker, const std::vector<DialogueAct>& acts,
                  const TrackerConfig& config, std::vector<TrackerDiagnostic>* diagnostics) {
  TrackerState next = state;
  TurnStepper stepper(next, speaker, config, diagnostics);
  for (const DialogueAct& act : acts) stepper.apply(act);
  ++next.turn_index;
  return next;
}

TrackerRun run_tracker(const AnnotatedDialogue& dialogue, const TrackerConfig& config) {
  TrackerRun result;
  TrackerState state;
  result.states.reserve(dialogue.turns.size());
  for (std::size_t i = 0; i < dialogue.turns.size(); ++i) {
    const Turn& turn = dialogue.turns[i];
    if (!turn.acts) {
      throw Error(Errc::MissingActs, "dialogue \"" + dialogue.id + "\" turn " + std::to_string(i) +
                                         ": missing act annotations");
    }
    state = step(state, turn.utterance.speaker, *turn.acts, config, &result.diagnostics);
    result.states.push_back(state.agreements);
  }
  result.final_state = std::move(state);
  return result;
}

std::vector<AgreementState> run(const AnnotatedDialogue& dialogue, const TrackerConfig& config) {
  return run_tracker(dialogue, config).states;
}

}  // namespace agtrack
