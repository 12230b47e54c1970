#include "agtrack/splits.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "agtrack/error.hpp"
#include "agtrack/rng.hpp"
#include "json_util.hpp"

namespace agtrack {

bool is_valid_fraction(int percent) {
  return std::find(kFractions.begin(), kFractions.end(), percent) != kFractions.end();
}

std::vector<SplitPlan> make_splits(std::vector<std::string> ids, std::uint64_t seed) {
  if (ids.size() < kFolds) {
    throw Error(Errc::CorpusTooSmall, "need at least " + std::to_string(kFolds) + " dialogues to split, got " +
                                          std::to_string(ids.size()));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(Errc::SchemaViolation, "duplicate dialogue id in split input");
  }
  // Sorting first makes the plan a function of the id set and the seed only.
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(ids));

  const std::size_t n = ids.size();
  std::vector<std::vector<std::string>> folds(kFolds);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < kFolds; ++k) {
    const std::size_t size = n / kFolds + (k < n % kFolds ? 1 : 0);
    folds[k].assign(ids.begin() + static_cast<std::ptrdiff_t>(pos),
                    ids.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }

  std::map<std::string, std::size_t> assignments;
  for (std::size_t k = 0; k < kFolds; ++k) {
    for (const std::string& id : folds[k]) assignments.emplace(id, k);
  }

  std::vector<SplitPlan> plans;
  for (std::size_t k = 0; k < kFolds; ++k) {
    std::vector<std::string> rest;
    for (std::size_t j = 0; j < kFolds; ++j) {
      if (j != k) rest.insert(rest.end(), folds[j].begin(), folds[j].end());
    }
    Rng fold_rng(derive_seed(seed, "fold-" + std::to_string(k)));
    fold_rng.shuffle(std::span<std::string>(rest));
    const std::size_t val_size = (rest.size() * kValidationPercent + 50) / 100;

    SplitPlan plan;
    plan.fold = k;
    plan.seed = seed;
    plan.fraction = 100;
    plan.val.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(val_size));
    plan.train.assign(rest.begin() + static_cast<std::ptrdiff_t>(val_size), rest.end());
    plan.test = folds[k];
    plan.fold_assignments = assignments;
    plans.push_back(std::move(plan));
  }
  return plans;
}

SplitPlan fractional_subset(const SplitPlan& plan, int fraction) {
  if (!is_valid_fraction(fraction)) {
    throw Error(Errc::InvalidFraction, "invalid training fraction " + std::to_string(fraction) +
                                           "% (expected one of 10, 20, 30, 40, 50, 75, 100)");
  }
  SplitPlan out = plan;
  const std::size_t full = plan.train.size();
  const std::size_t keep = (full * static_cast<std::size_t>(fraction) + 99) / 100;
  out.train.resize(std::min(keep, full));
  out.fraction = fraction;
  return out;
}

std::string manifest_json(const std::vector<SplitPlan>& plans) {
  nlohmann::ordered_json doc;
  doc["seed"] = plans.empty() ? 0 : plans.front().seed;
  doc["folds"] = nlohmann::ordered_json::array();
  for (const SplitPlan& p : plans) {
    nlohmann::ordered_json f;
    f["fold"] = p.fold;
    f["fraction"] = p.fraction;
    f["train"] = p.train;
    f["val"] = p.val;
    f["test"] = p.test;
    doc["folds"].push_back(std::move(f));
  }
  nlohmann::ordered_json assignments = nlohmann::ordered_json::object();
  if (!plans.empty()) {
    for (const auto& [id, fold] : plans.front().fold_assignments) assignments[id] = fold;
  }
  doc["fold_assignments"] = std::move(assignments);
  return doc.dump(2);
}

std::vector<SplitPlan> load_manifest(std::istream& in) {
  using detail::json;
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  json doc = detail::parse_json(text, "split manifest");
  const json& seed = detail::require(doc, "seed", "split manifest");
  const json& folds = detail::require(doc, "folds", "split manifest");
  const json& assignments = detail::require(doc, "fold_assignments", "split manifest");
  if (!seed.is_number_unsigned() || !folds.is_array() || !assignments.is_object()) {
    throw Error(Errc::SchemaViolation, "split manifest: bad field types");
  }
  std::map<std::string, std::size_t> fold_of;
  for (const auto& [id, fold] : assignments.items()) {
    if (!fold.is_number_unsigned()) throw Error(Errc::SchemaViolation, "split manifest: bad fold index");
    fold_of.emplace(id, fold.get<std::size_t>());
  }
  auto ids = [](const json& f, const char* key) {
    const json& list = detail::require(f, key, "split manifest fold");
    if (!list.is_array()) throw Error(Errc::SchemaViolation, std::string("split manifest: \"") + key + "\" must be an array");
    return list.get<std::vector<std::string>>();
  };
  std::vector<SplitPlan> plans;
  for (const json& f : folds) {
    SplitPlan p;
    p.fold = detail::require(f, "fold", "split manifest fold").get<std::size_t>();
    p.fraction = detail::require(f, "fraction", "split manifest fold").get<int>();
    p.seed = seed.get<std::uint64_t>();
    p.train = ids(f, "train");
    p.val = ids(f, "val");
    p.test = ids(f, "test");
    p.fold_assignments = fold_of;
    plans.push_back(std::move(p));
  }
  return plans;
}

}  // namespace agtrack
