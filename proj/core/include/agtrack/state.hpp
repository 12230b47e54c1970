#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agtrack {

class Ontology;

/// Slot -> agreed value. A missing slot means no agreement has been reached
/// on it yet. Holds at most one value per slot.
class AgreementState {
 public:
  using Map = std::map<std::string, std::string, std::less<>>;

  AgreementState() = default;
  AgreementState(std::initializer_list<std::pair<const std::string, std::string>> init)
      : entries_(init) {}
  explicit AgreementState(Map entries) : entries_(std::move(entries)) {}

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::string_view slot) const { return entries_.find(slot) != entries_.end(); }
  std::optional<std::string> get(std::string_view slot) const;

  void set(std::string slot, std::string value) { entries_.insert_or_assign(std::move(slot), std::move(value)); }
  bool erase(std::string_view slot);

  const Map& entries() const noexcept { return entries_; }

  /// Entries ordered by ontology declaration order; slots unknown to the
  /// ontology follow, in lexicographic order.
  std::vector<std::pair<std::string, std::string>> ordered(const Ontology& ontology) const;

  friend bool operator==(const AgreementState&, const AgreementState&) = default;

 private:
  Map entries_;
};

/// Strict weak ordering of slot names: ontology order first, then unknown
/// slots lexicographically.
struct SlotOrder {
  const Ontology* ontology;
  bool operator()(std::string_view a, std::string_view b) const;
};

}  // namespace agtrack
