#include <gtest/gtest.h>

#include <set>

#include "agtrack/error.hpp"
#include "agtrack/lev.hpp"
#include "agtrack/ontology.hpp"
#include "malformed_spans.hpp"
#include "synthetic.hpp"

namespace agtrack {
namespace {

const Ontology& onto() { return gpt_negochat_ontology(); }

Errc strict_error(std::string_view text) {
  try {
    parse_strict(text, onto());
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "strict parse accepted: " << text;
  return Errc::Io;
}

TEST(LevDiff, InsertOnGrowth) {
  AgreementState prev{{"company car", "no"}};
  AgreementState cur{{"company car", "no"}, {"salary", "90,000"}};
  LevSpan span = diff(prev, cur, onto());
  ASSERT_EQ(span.ops.size(), 1u);
  EXPECT_EQ(span.ops[0], (EditOp{EditKind::Insert, "salary", "90,000"}));
  EXPECT_EQ(render(span), "[gpt-negochat] insert salary = 90,000");
}

TEST(LevDiff, IdentityIsEmpty) {
  AgreementState s{{"salary", "60k usd"}, {"pension fund", "10%"}};
  EXPECT_TRUE(diff(s, s, onto()).empty());
  EXPECT_EQ(render(diff(s, s, onto())), "[gpt-negochat]");
}

TEST(LevDiff, ValueChangeIsSubstitute) {
  LevSpan span = diff({{"salary", "60k usd"}}, {{"salary", "90k usd"}}, onto());
  ASSERT_EQ(span.ops.size(), 1u);
  EXPECT_EQ(span.ops[0], (EditOp{EditKind::Substitute, "salary", "90k usd"}));
}

TEST(LevDiff, RemovalIsDeleteAndOpsFollowOntologyOrder) {
  AgreementState prev{{"leased car", "with leased car"}, {"working hours", "8 hours"}};
  AgreementState cur{{"salary", "60k usd"}, {"working hours", "9 hours"}};
  EXPECT_EQ(render(diff(prev, cur, onto())),
            "[gpt-negochat] substitute working hours = 9 hours ; insert salary = 60k usd ; delete leased car");
}

TEST(LevApply, Examples) {
  LevSpan ins{"gpt-negochat", {{EditKind::Insert, "working hours", "9 hours"}}};
  EXPECT_EQ(apply({}, ins), (AgreementState{{"working hours", "9 hours"}}));
  AgreementState s{{"pension fund", "10%"}};
  EXPECT_EQ(apply(s, LevSpan{}), s);
  LevSpan sub{"gpt-negochat", {{EditKind::Substitute, "pension fund", "20%"}}};
  EXPECT_EQ(apply(s, sub), (AgreementState{{"pension fund", "20%"}}));
}

TEST(LevApply, LenientToleratesConflicts) {
  AgreementState s{{"salary", "60k usd"}};
  LevSpan span{"gpt-negochat",
               {{EditKind::Insert, "salary", "90k usd"},
                {EditKind::Substitute, "pension fund", "10%"},
                {EditKind::Delete, "leased car", std::nullopt}}};
  EXPECT_EQ(apply(s, span), (AgreementState{{"salary", "90k usd"}, {"pension fund", "10%"}}));
}

TEST(LevApply, StrictRaisesConflictNamingTheOp) {
  AgreementState s{{"salary", "60k usd"}};
  auto expect_conflict = [&](const EditOp& op) {
    try {
      apply(s, LevSpan{"gpt-negochat", {op}}, ApplyMode::Strict);
      FAIL() << render(op);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ApplyConflict);
      EXPECT_NE(std::string(e.what()).find(render(op)), std::string::npos) << e.what();
    }
  };
  expect_conflict({EditKind::Insert, "salary", "90k usd"});
  expect_conflict({EditKind::Delete, "pension fund", std::nullopt});
  expect_conflict({EditKind::Substitute, "pension fund", "10%"});
  EXPECT_NO_THROW(apply(s, LevSpan{"gpt-negochat", {{EditKind::Substitute, "salary", "90k usd"}}},
                        ApplyMode::Strict));
}

TEST(LevParse, SingleDelete) {
  LevSpan span = parse_strict("[gpt-negochat] delete leased car", onto());
  ASSERT_EQ(span.ops.size(), 1u);
  EXPECT_EQ(span.ops[0], (EditOp{EditKind::Delete, "leased car", std::nullopt}));
}

TEST(LevParse, EmptySpanAndOtherDomain) {
  EXPECT_TRUE(parse_strict("[gpt-negochat]", onto()).empty());
  EXPECT_EQ(parse_strict("[multiwoz]", onto()).domain, "multiwoz");
  EXPECT_EQ(parse_strict("  [gpt-negochat]   ", onto()).domain, "gpt-negochat");
}

TEST(LevParse, NormalizesCaseSpacingAndOrder) {
  LevSpan span = parse_strict("[GPT-Negochat]  insert Salary =  90K USD;delete Working Hours", onto());
  EXPECT_EQ(render(span), "[gpt-negochat] delete working hours ; insert salary = 90k usd");
}

TEST(LevParse, StrictRejectsMalformedSuite) {
  const auto& cases = testing::malformed_span_suite();
  ASSERT_GE(cases.size(), 20u);
  for (const auto& [text, code] : cases) {
    EXPECT_EQ(strict_error(text), code) << "input: \"" << text << "\" got " << to_string(strict_error(text));
  }
}

TEST(LevParse, LenientDropsAndCounts) {
  ParseResult r = parse("[gpt-negochat] insert salary = 90k usd ; frobnicate ; delete leased car", onto());
  EXPECT_EQ(r.dropped, 1u);
  EXPECT_FALSE(r.missing_prefix);
  EXPECT_EQ(render(r.span), "[gpt-negochat] insert salary = 90k usd ; delete leased car");

  ParseResult garbage = parse("garbage", onto());
  EXPECT_TRUE(garbage.missing_prefix);
  EXPECT_TRUE(garbage.span.empty());
  EXPECT_TRUE(garbage.defective());

  ParseResult no_prefix = parse("insert salary = 60k usd", onto());
  EXPECT_TRUE(no_prefix.missing_prefix);
  EXPECT_EQ(no_prefix.span.ops.size(), 1u);
}

TEST(LevParse, LenientKeepsUnknownSlotsAndValues) {
  ParseResult r = parse("[gpt-negochat] insert bonus = 5% ; insert salary = 95k", onto());
  EXPECT_EQ(r.dropped, 0u);
  ASSERT_EQ(r.span.ops.size(), 2u);
  // Known slots come first; unknown ones follow.
  EXPECT_EQ(r.span.ops[0].slot, "salary");
  EXPECT_EQ(r.span.ops[1].slot, "bonus");
}

TEST(LevParse, LenientKeepsFirstOpPerSlot) {
  ParseResult r = parse("[gpt-negochat] insert salary = 90k usd ; delete salary", onto());
  EXPECT_EQ(r.dropped, 1u);
  ASSERT_EQ(r.span.ops.size(), 1u);
  EXPECT_EQ(r.span.ops[0].kind, EditKind::Insert);
}

TEST(LevProperties, DiffApplyCompletenessOverRandomPairs) {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    AgreementState a = testing::random_state(onto(), rng);
    AgreementState b = testing::random_state(onto(), rng);
    LevSpan span = diff(a, b, onto());
    ASSERT_EQ(apply(a, span), b);
    ASSERT_EQ(apply(a, span, ApplyMode::Strict), b);
    std::set<std::string> slots;
    for (const EditOp& op : span.ops) ASSERT_TRUE(slots.insert(op.slot).second);
    ASSERT_TRUE(diff(a, a, onto()).empty());
  }
}

TEST(LevProperties, StrictRoundTripOverRandomSpans) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    LevSpan span = testing::random_span(onto(), rng);
    const std::string text = render(span);
    ASSERT_EQ(parse_strict(text, onto()), span) << text;
    ASSERT_EQ(render(parse(text, onto()).span), text);
  }
}

TEST(StateSpan, RenderAndParse) {
  EXPECT_EQ(render_state({}, onto()), "none");
  AgreementState s{{"salary", "90k usd"}, {"working hours", "8 hours"}};
  EXPECT_EQ(render_state(s, onto()), "working hours = 8 hours ; salary = 90k usd");
  EXPECT_EQ(parse_state(render_state(s, onto())), s);
  EXPECT_TRUE(parse_state("none").empty());
  EXPECT_THROW(parse_state("salary"), Error);
  EXPECT_THROW(parse_state("salary = 1 ; salary = 2"), Error);
}

}  // namespace
}  // namespace agtrack
