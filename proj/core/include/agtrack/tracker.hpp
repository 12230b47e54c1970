#pragma once

// Rule-based agreement tracker driven by gold dialogue acts.
//
// Per act, in order:
//   Offer(pairs)     record each pair as the speaker's pending offer on that
//                    slot (superseding the speaker's own earlier offer). An
//                    offer of a different value on an agreed slot reopens it.
//   Accept(pairs)    bind each pair to the other speaker's pending offer on
//                    the slot; with no pending match, fall back to the other
//                    speaker's last offer on the slot, else log and ignore.
//   Accept()         accept every pending offer of the other speaker.
//   Reject(pairs)    drop the listed slots from the other speaker's pending
//                    offers; Reject() drops all of them.
//   Other            no effect.
// An accepted pair becomes an agreement and leaves both speakers' pending
// offers.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agtrack/dialogue.hpp"
#include "agtrack/state.hpp"

namespace agtrack {

struct OfferRecord {
  std::string value;
  std::size_t turn = 0;

  friend bool operator==(const OfferRecord&, const OfferRecord&) = default;
};

using OfferMap = std::map<std::string, OfferRecord, std::less<>>;

/// Offers per speaker, keyed by slot. A speaker holds at most one offer per
/// slot; a newer offer supersedes the older one.
struct PendingOffers {
  OfferMap employer;
  OfferMap candidate;

  OfferMap& of(Speaker s) { return s == Speaker::Employer ? employer : candidate; }
  const OfferMap& of(Speaker s) const { return s == Speaker::Employer ? employer : candidate; }
  bool empty() const { return employer.empty() && candidate.empty(); }

  friend bool operator==(const PendingOffers&, const PendingOffers&) = default;
};

/// Where an agreement came from.
struct Provenance {
  std::string value;
  Speaker offered_by = Speaker::Employer;
  std::size_t offer_turn = 0;
  std::size_t accept_turn = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrackerState {
  AgreementState agreements;
  PendingOffers pending;
  std::size_t turn_index = 0;

  /// Latest offer per speaker per slot, kept after rejection so a later
  /// acceptance can still bind to it.
  PendingOffers last_offers;
  /// One record per current agreement, keyed by slot.
  std::map<std::string, Provenance, std::less<>> provenance;

  friend bool operator==(const TrackerState&, const TrackerState&) = default;
};

enum class TrackerEvent { UnmatchedAccept, UnmatchedReject, NothingToAccept, NothingToReject, FrozenSlot };

std::string_view to_string(TrackerEvent event) noexcept;

struct TrackerDiagnostic {
  std::size_t turn = 0;
  Speaker speaker = Speaker::Employer;
  TrackerEvent event = TrackerEvent::UnmatchedAccept;
  std::string slot;
  std::string value;
};

struct TrackerConfig {
  /// When set, offers on agreed slots are ignored instead of reopening them.
  bool freeze_agreed = false;
};

/// Processes one turn's acts and advances turn_index by one.
TrackerState step(const TrackerState& state, Speaker speaker,
                  const std::vector<DialogueAct>& acts,
                  const TrackerConfig& config = {},
                  std::vector<TrackerDiagnostic>* diagnostics = nullptr);

struct TrackerRun {
  std::vector<AgreementState> states;  // one per turn
  TrackerState final_state;
  std::vector<TrackerDiagnostic> diagnostics;
};

/// Folds step over the dialogue from the empty state. Throws
/// Errc::MissingActs naming the first turn without act annotations.
TrackerRun run_tracker(const AnnotatedDialogue& dialogue, const TrackerConfig& config = {});

/// Per-turn states only.
std::vector<AgreementState> run(const AnnotatedDialogue& dialogue, const TrackerConfig& config = {});

}  // namespace agtrack
