#include <gtest/gtest.h>

#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"
#include "agtrack/tracker.hpp"
#include "synthetic.hpp"

namespace agtrack {
namespace {

using S = Speaker;

TrackerState with_pending(S who, std::initializer_list<std::pair<const char*, const char*>> offers) {
  TrackerState s;
  for (const auto& [slot, value] : offers) {
    s.pending.of(who).emplace(slot, OfferRecord{value, 0});
    s.last_offers.of(who).emplace(slot, OfferRecord{value, 0});
  }
  s.turn_index = 1;
  return s;
}

TEST(TrackerStep, AcceptMatchingPendingOffer) {
  TrackerState s = with_pending(S::Employer, {{"salary", "90,000"}});
  TrackerState next = step(s, S::Candidate, {DialogueAct::accept({{"salary", "90,000"}})});
  EXPECT_EQ(next.agreements, (AgreementState{{"salary", "90,000"}}));
  EXPECT_TRUE(next.pending.empty());
  EXPECT_EQ(next.turn_index, 2u);
  const Provenance& p = next.provenance.at("salary");
  EXPECT_EQ(p.offered_by, S::Employer);
  EXPECT_EQ(p.accept_turn, 1u);
}

TEST(TrackerStep, OtherOnlyAdvancesTurn) {
  TrackerState s = with_pending(S::Employer, {{"salary", "90,000"}});
  s.agreements.set("pension fund", "10%");
  TrackerState next = step(s, S::Candidate, {DialogueAct::other()});
  EXPECT_EQ(next.agreements, s.agreements);
  EXPECT_EQ(next.pending, s.pending);
  EXPECT_EQ(next.turn_index, s.turn_index + 1);
}

TEST(TrackerStep, PartialAcceptanceAndRejection) {
  TrackerState s = with_pending(S::Candidate, {{"working hours", "8 hours"}, {"pension fund", "20%"}});
  TrackerState next = step(s, S::Employer,
                           {DialogueAct::accept({{"working hours", "8 hours"}}),
                            DialogueAct::reject({{"pension fund", "20%"}})});
  EXPECT_EQ(next.agreements, (AgreementState{{"working hours", "8 hours"}}));
  EXPECT_TRUE(next.pending.candidate.empty());
}

TEST(TrackerStep, PayloadlessAcceptTakesAllPendingOfOtherSpeaker) {
  TrackerState s = with_pending(S::Employer, {{"salary", "60k usd"}, {"pension fund", "10%"}});
  s.pending.candidate.emplace("job description", OfferRecord{"programmer", 0});
  TrackerState next = step(s, S::Candidate, {DialogueAct::accept()});
  EXPECT_EQ(next.agreements, (AgreementState{{"salary", "60k usd"}, {"pension fund", "10%"}}));
  // The accepter's own offer stays pending.
  EXPECT_EQ(next.pending.candidate.size(), 1u);
}

TEST(TrackerStep, PayloadlessRejectClearsOtherSpeakerOnly) {
  TrackerState s = with_pending(S::Employer, {{"salary", "60k usd"}, {"pension fund", "10%"}});
  s.pending.candidate.emplace("salary", OfferRecord{"120k usd", 0});
  TrackerState next = step(s, S::Candidate, {DialogueAct::reject()});
  EXPECT_TRUE(next.pending.employer.empty());
  EXPECT_EQ(next.pending.candidate.size(), 1u);
  EXPECT_TRUE(next.agreements.empty());
}

TEST(TrackerStep, CounterOfferDoesNotRejectAndAcceptBindsToOtherSpeaker) {
  TrackerState s;
  s = step(s, S::Employer, {DialogueAct::offer({{"salary", "60k usd"}})});
  s = step(s, S::Candidate, {DialogueAct::offer({{"salary", "120k usd"}})});
  EXPECT_EQ(s.pending.employer.at("salary").value, "60k usd");
  EXPECT_EQ(s.pending.candidate.at("salary").value, "120k usd");
  // Employer accepts 60k: that is the employer's own offer, not the candidate's.
  std::vector<TrackerDiagnostic> diags;
  TrackerState own = step(s, S::Employer, {DialogueAct::accept({{"salary", "60k usd"}})}, {}, &diags);
  EXPECT_TRUE(own.agreements.empty());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].event, TrackerEvent::UnmatchedAccept);
  // Accepting the candidate's value agrees and clears both sides.
  TrackerState agreed = step(s, S::Employer, {DialogueAct::accept({{"salary", "120k usd"}})});
  EXPECT_EQ(agreed.agreements.get("salary"), "120k usd");
  EXPECT_TRUE(agreed.pending.empty());
}

TEST(TrackerStep, LatestOfferSupersedes) {
  TrackerState s;
  s = step(s, S::Employer, {DialogueAct::offer({{"salary", "60k usd"}})});
  s = step(s, S::Candidate, {DialogueAct::other()});
  s = step(s, S::Employer, {DialogueAct::offer({{"salary", "90k usd"}})});
  EXPECT_EQ(s.pending.employer.at("salary").value, "90k usd");
  s = step(s, S::Candidate, {DialogueAct::accept()});
  EXPECT_EQ(s.agreements.get("salary"), "90k usd");
  EXPECT_EQ(s.provenance.at("salary").offer_turn, 2u);
}

TEST(TrackerStep, AcceptOfRejectedOfferBindsToLastOffer) {
  TrackerState s;
  s = step(s, S::Employer, {DialogueAct::offer({{"salary", "90k usd"}})});
  s = step(s, S::Candidate, {DialogueAct::reject()});
  s = step(s, S::Employer, {DialogueAct::other()});
  s = step(s, S::Candidate, {DialogueAct::accept({{"salary", "90k usd"}})});
  EXPECT_EQ(s.agreements.get("salary"), "90k usd");
  EXPECT_EQ(s.provenance.at("salary").offer_turn, 0u);
}

TEST(TrackerStep, AcceptOfNeverOfferedValueIsLoggedAndIgnored) {
  std::vector<TrackerDiagnostic> diags;
  TrackerState s = with_pending(S::Employer, {{"salary", "60k usd"}});
  TrackerState next = step(s, S::Candidate, {DialogueAct::accept({{"salary", "90k usd"}})}, {}, &diags);
  EXPECT_TRUE(next.agreements.empty());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].slot, "salary");
  EXPECT_EQ(diags[0].value, "90k usd");
  EXPECT_EQ(diags[0].speaker, S::Candidate);
}

TEST(TrackerStep, DiagnosticsForEmptyResponses) {
  std::vector<TrackerDiagnostic> diags;
  step(TrackerState{}, S::Candidate, {DialogueAct::accept(), DialogueAct::reject(),
                                      DialogueAct::reject({{"salary", "60k usd"}})},
       {}, &diags);
  ASSERT_EQ(diags.size(), 3u);
  EXPECT_EQ(diags[0].event, TrackerEvent::NothingToAccept);
  EXPECT_EQ(diags[1].event, TrackerEvent::NothingToReject);
  EXPECT_EQ(diags[2].event, TrackerEvent::UnmatchedReject);
}

TEST(TrackerStep, OfferReopensAgreedSlotUnlessFrozen) {
  TrackerState s;
  s = step(s, S::Employer, {DialogueAct::offer({{"salary", "60k usd"}})});
  s = step(s, S::Candidate, {DialogueAct::accept()});
  ASSERT_EQ(s.agreements.get("salary"), "60k usd");

  // Restating the agreed value keeps the agreement.
  TrackerState restated = step(s, S::Employer, {DialogueAct::offer({{"salary", "60k usd"}})});
  EXPECT_EQ(restated.agreements.get("salary"), "60k usd");

  TrackerState reopened = step(s, S::Candidate, {DialogueAct::offer({{"salary", "90k usd"}})});
  EXPECT_FALSE(reopened.agreements.contains("salary"));
  EXPECT_FALSE(reopened.provenance.count("salary"));
  EXPECT_EQ(reopened.pending.candidate.at("salary").value, "90k usd");

  std::vector<TrackerDiagnostic> diags;
  TrackerState frozen = step(s, S::Candidate, {DialogueAct::offer({{"salary", "90k usd"}})},
                             TrackerConfig{.freeze_agreed = true}, &diags);
  EXPECT_EQ(frozen.agreements.get("salary"), "60k usd");
  EXPECT_TRUE(frozen.pending.candidate.empty());
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].event, TrackerEvent::FrozenSlot);
}

TEST(TrackerRun, Table2ExcerptMatchesGoldEveryTurn) {
  Corpus c = testing::table2_corpus();
  std::vector<AgreementState> states = run(c[0]);
  ASSERT_EQ(states.size(), c[0].turns.size());
  for (std::size_t t = 0; t < states.size(); ++t) {
    EXPECT_EQ(states[t], *c[0].turns[t].gold) << "turn " << t;
  }
}

TEST(TrackerRun, OnlyOtherActsGiveEmptyStates) {
  Rng rng(3);
  AnnotatedDialogue d = testing::random_dialogue(gpt_negochat_ontology(), rng, "o", 12);
  for (Turn& t : d.turns) t.acts = std::vector<DialogueAct>{DialogueAct::other()};
  for (const AgreementState& s : run(d)) EXPECT_TRUE(s.empty());
}

TEST(TrackerRun, UnansweredOfferLeavesPendingOnly) {
  AnnotatedDialogue d;
  d.id = "u";
  d.turns.push_back({{S::Employer, "60k?", 0}, std::vector<DialogueAct>{DialogueAct::offer({{"salary", "60k usd"}})}, {}, 1});
  d.turns.push_back({{S::Candidate, "hmm", 1}, std::vector<DialogueAct>{DialogueAct::other()}, {}, 1});
  TrackerRun r = run_tracker(d);
  EXPECT_TRUE(r.states.back().empty());
  EXPECT_FALSE(r.final_state.pending.empty());
}

TEST(TrackerRun, MissingActsNamesTheTurn) {
  Corpus c = testing::table2_corpus();
  c[0].turns[4].acts.reset();
  try {
    run(c[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingActs);
    EXPECT_NE(std::string(e.what()).find("turn 4"), std::string::npos);
  }
}

class TrackerProperties : public ::testing::Test {
 protected:
  Corpus corpus = testing::random_corpus(gpt_negochat_ontology(), 4242, 200);
};

TEST_F(TrackerProperties, AgreementsHaveValidProvenance) {
  for (const AnnotatedDialogue& d : corpus) {
    TrackerState s;
    for (const Turn& turn : d.turns) {
      s = step(s, turn.utterance.speaker, *turn.acts);
      ASSERT_EQ(s.provenance.size(), s.agreements.size());
      for (const auto& [slot, value] : s.agreements.entries()) {
        const Provenance& p = s.provenance.at(slot);
        EXPECT_EQ(p.value, value);
        EXPECT_LE(p.offer_turn, p.accept_turn);
        // Offer and acceptance come from different speakers.
        EXPECT_NE(d.turns[p.offer_turn].utterance.speaker, d.turns[p.accept_turn].utterance.speaker);
        EXPECT_EQ(d.turns[p.offer_turn].utterance.speaker, p.offered_by);
      }
    }
  }
}

TEST_F(TrackerProperties, DeterministicAndIndependentOfOtherActs) {
  for (const AnnotatedDialogue& d : corpus) {
    const auto states = run(d);
    EXPECT_EQ(run(d), states);
    AnnotatedDialogue stripped = d;
    for (Turn& t : stripped.turns) {
      std::erase_if(*t.acts, [](const DialogueAct& a) { return a.kind == ActKind::Other; });
    }
    EXPECT_EQ(run(stripped), states) << d.id;
  }
}

TEST_F(TrackerProperties, OffersAndRejectsNeverAddAgreements) {
  for (const AnnotatedDialogue& d : corpus) {
    TrackerState s;
    for (const Turn& turn : d.turns) {
      for (const DialogueAct& act : *turn.acts) {
        TrackerState next = step(s, turn.utterance.speaker, {act});
        if (act.kind == ActKind::Offer || act.kind == ActKind::Reject) {
          for (const auto& [slot, value] : next.agreements.entries()) {
            EXPECT_EQ(s.agreements.get(slot), value);
          }
        }
        s = next;
        --s.turn_index;
      }
      ++s.turn_index;
    }
  }
}

}  // namespace
}  // namespace agtrack
