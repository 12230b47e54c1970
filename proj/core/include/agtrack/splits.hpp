#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace agtrack {

inline constexpr std::size_t kFolds = 3;
inline constexpr std::array<int, 7> kFractions = {10, 20, 30, 40, 50, 75, 100};
/// Share of each fold's non-test dialogues held out for validation, in percent.
inline constexpr int kValidationPercent = 15;

bool is_valid_fraction(int percent);

/// One cross-validation fold at one training fraction. `train` keeps a
/// seeded order, so every fractional subset is a prefix of it.
struct SplitPlan {
  std::size_t fold = 0;
  std::uint64_t seed = 0;
  int fraction = 100;
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::map<std::string, std::size_t> fold_assignments;  // dialogue id -> test fold

  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

/// Shuffles dialogue ids with `seed`, cuts them into three near-equal test
/// folds, and splits each fold's remaining dialogues 85/15 into train/val.
/// Throws Errc::CorpusTooSmall below three dialogues.
std::vector<SplitPlan> make_splits(std::vector<std::string> dialogue_ids, std::uint64_t seed);

/// Keeps the first ceil(fraction% * |train|) training dialogues. Throws
/// Errc::InvalidFraction for fractions outside kFractions.
SplitPlan fractional_subset(const SplitPlan& plan, int fraction);

/// {"seed", "folds": [{"fold", "fraction", "train", "val", "test"}], "fold_assignments"}.
std::string manifest_json(const std::vector<SplitPlan>& plans);
std::vector<SplitPlan> load_manifest(std::istream& in);

}  // namespace agtrack
