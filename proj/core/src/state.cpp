#include "agtrack/state.hpp"

#include <algorithm>
#include <limits>

#include "agtrack/ontology.hpp"

namespace agtrack {

std::optional<std::string> AgreementState::get(std::string_view slot) const {
  auto it = entries_.find(slot);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool AgreementState::erase(std::string_view slot) {
  auto it = entries_.find(slot);
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

std::vector<std::pair<std::string, std::string>> AgreementState::ordered(const Ontology& ontology) const {
  std::vector<std::pair<std::string, std::string>> out(entries_.begin(), entries_.end());
  SlotOrder less{&ontology};
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return less(a.first, b.first); });
  return out;
}

bool SlotOrder::operator()(std::string_view a, std::string_view b) const {
  constexpr auto kUnknown = std::numeric_limits<std::size_t>::max();
  const std::size_t ia = ontology->slot_index(a).value_or(kUnknown);
  const std::size_t ib = ontology->slot_index(b).value_or(kUnknown);
  if (ia != ib) return ia < ib;
  return a < b;
}

}  // namespace agtrack
