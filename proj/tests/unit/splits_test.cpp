#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "agtrack/error.hpp"
#include "agtrack/splits.hpp"

namespace agtrack {
namespace {

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("dlg-" + std::to_string(i));
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

TEST(Splits, CorpusOf105) {
  auto plans = make_splits(ids(105), 13);
  ASSERT_EQ(plans.size(), 3u);
  for (const SplitPlan& p : plans) {
    EXPECT_EQ(p.test.size(), 35u);
    EXPECT_EQ(p.val.size(), 11u);
    EXPECT_EQ(p.train.size(), 59u);
    EXPECT_EQ(p.fraction, 100);
  }
}

TEST(Splits, PartitionPropertiesAcrossSizesAndSeeds) {
  for (std::size_t n = 3; n < 130; n += 7) {
    for (std::uint64_t seed : {0ull, 1ull, 13ull, 99991ull}) {
      auto plans = make_splits(ids(n), seed);
      std::set<std::string> union_of_tests;
      std::size_t smallest = n, largest = 0;
      for (const SplitPlan& p : plans) {
        auto tr = as_set(p.train), va = as_set(p.val), te = as_set(p.test);
        EXPECT_EQ(tr.size() + va.size() + te.size(), n);
        std::set<std::string> all = tr;
        all.insert(va.begin(), va.end());
        all.insert(te.begin(), te.end());
        EXPECT_EQ(all, as_set(ids(n))) << "n=" << n;
        for (const auto& id : te) EXPECT_TRUE(union_of_tests.insert(id).second) << "test folds overlap";
        smallest = std::min(smallest, p.test.size());
        largest = std::max(largest, p.test.size());
        const double rest = static_cast<double>(n - p.test.size());
        EXPECT_LE(std::abs(static_cast<double>(p.val.size()) - 0.15 * rest), 1.0);
      }
      EXPECT_EQ(union_of_tests, as_set(ids(n)));
      EXPECT_LE(largest - smallest, 1u);
      for (const SplitPlan& p : plans) {
        for (const auto& id : p.test) EXPECT_EQ(p.fold_assignments.at(id), p.fold);
      }
    }
  }
}

TEST(Splits, DeterministicAndOrderIndependent) {
  auto forward = ids(60);
  auto backward = forward;
  std::reverse(backward.begin(), backward.end());
  EXPECT_EQ(make_splits(forward, 5), make_splits(backward, 5));
  EXPECT_NE(make_splits(forward, 5)[0].test, make_splits(forward, 6)[0].test);
}

TEST(Splits, TinyAndTooSmall) {
  auto plans = make_splits(ids(3), 1);
  for (const SplitPlan& p : plans) EXPECT_EQ(p.test.size(), 1u);
  try {
    make_splits(ids(2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CorpusTooSmall);
  }
  EXPECT_THROW(make_splits({"a", "a", "b"}, 1), Error);
}

TEST(Fractions, SizesAndNesting) {
  auto plans = make_splits(ids(105), 13);
  for (const SplitPlan& plan : plans) {
    std::vector<std::string> previous;
    for (int f : kFractions) {
      SplitPlan sub = fractional_subset(plan, f);
      const auto expected = static_cast<std::size_t>(
          std::ceil(static_cast<double>(f) * static_cast<double>(plan.train.size()) / 100.0));
      EXPECT_EQ(sub.train.size(), expected) << f;
      EXPECT_EQ(sub.val, plan.val);
      EXPECT_EQ(sub.test, plan.test);
      EXPECT_EQ(sub.fraction, f);
      EXPECT_TRUE(std::equal(previous.begin(), previous.end(), sub.train.begin())) << "not nested at " << f;
      previous = sub.train;
    }
    EXPECT_EQ(fractional_subset(plan, 100), plan);
  }
}

TEST(Fractions, TenPercentOfSixty) {
  SplitPlan plan;
  plan.train = ids(60);
  EXPECT_EQ(fractional_subset(plan, 10).train.size(), 6u);
  EXPECT_EQ(fractional_subset(plan, 75).train.size(), 45u);
}

TEST(Fractions, Invalid) {
  SplitPlan plan;
  plan.train = ids(10);
  for (int f : {0, 5, 25, 101, -10}) {
    EXPECT_FALSE(is_valid_fraction(f));
    try {
      fractional_subset(plan, f);
      FAIL() << f;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidFraction);
    }
  }
}

TEST(Manifest, RoundTrip) {
  auto base = make_splits(ids(40), 77);
  std::vector<SplitPlan> plans;
  for (int f : {10, 100}) {
    for (const SplitPlan& p : base) plans.push_back(fractional_subset(p, f));
  }
  std::istringstream in(manifest_json(plans));
  EXPECT_EQ(load_manifest(in), plans);
  std::istringstream bad("{\"seed\": 1, \"folds\": 3}");
  EXPECT_THROW(load_manifest(bad), Error);
}

}  // namespace
}  // namespace agtrack
