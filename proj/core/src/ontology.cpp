#include "agtrack/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <set>

#include "agtrack/error.hpp"
#include "embedded.hpp"
#include "json_util.hpp"

namespace agtrack {

std::string canonicalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  if (out.empty()) {
    throw Error(Errc::EmptyInput, "empty string after trimming");
  }
  return out;
}

Ontology::Ontology(std::string name, std::vector<Slot> slots) : name_(std::move(name)) {
  if (slots.empty()) {
    throw Error(Errc::EmptyOntology, "empty ontology");
  }
  std::set<std::string> seen_slots;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    const std::string where = "slot #" + std::to_string(i);
    try {
      slot.name = canonicalize(slot.name);
    } catch (const Error&) {
      throw Error(Errc::SchemaViolation, where + ": empty slot name");
    }
    if (!seen_slots.insert(slot.name).second) {
      throw Error(Errc::DuplicateSlot, "duplicate slot \"" + slot.name + "\" at " + where);
    }
    if (slot.values.empty()) {
      throw Error(Errc::EmptyValueList,
                  "empty value list for slot \"" + slot.name + "\" at " + where);
    }
    std::set<std::string> seen_values;
    for (std::size_t j = 0; j < slot.values.size(); ++j) {
      std::string& value = slot.values[j];
      try {
        value = canonicalize(value);
      } catch (const Error&) {
        throw Error(Errc::SchemaViolation, "empty value #" + std::to_string(j) +
                                               " in slot \"" + slot.name + "\" at " + where);
      }
      if (!seen_values.insert(value).second) {
        throw Error(Errc::DuplicateValue, "duplicate value \"" + value + "\" in slot \"" +
                                              slot.name + "\" at " + where);
      }
    }
  }
  slots_ = std::move(slots);
}

std::optional<std::size_t> Ontology::slot_index(std::string_view slot) const {
  std::string key;
  try {
    key = canonicalize(slot);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto it = std::find_if(slots_.begin(), slots_.end(),
                         [&](const Slot& s) { return s.name == key; });
  if (it == slots_.end()) return std::nullopt;
  return static_cast<std::size_t>(std::distance(slots_.begin(), it));
}

std::span<const std::string> Ontology::values(std::string_view slot) const {
  auto idx = slot_index(slot);
  if (!idx) {
    throw Error(Errc::UnknownSlot, "unknown slot \"" + std::string(slot) + "\"");
  }
  return slots_[*idx].values;
}

bool Ontology::is_legal(std::string_view slot, std::string_view value) const {
  auto idx = slot_index(slot);
  if (!idx) return false;
  std::string key;
  try {
    key = canonicalize(value);
  } catch (const Error&) {
    return false;
  }
  const auto& values = slots_[*idx].values;
  return std::find(values.begin(), values.end(), key) != values.end();
}

std::string Ontology::to_json() const {
  detail::json doc;
  doc["name"] = name_;
  doc["slots"] = detail::json::array();
  for (const Slot& s : slots_) {
    doc["slots"].push_back({{"name", s.name}, {"values", s.values}});
  }
  return doc.dump(2);
}

Ontology load_ontology_text(std::string_view text) {
  using detail::json;
  json doc = detail::parse_json(text, "ontology");
  std::string name = detail::require_string(doc, "name", "ontology");
  const json& slots_doc = detail::require(doc, "slots", "ontology");
  if (!slots_doc.is_array()) {
    throw Error(Errc::SchemaViolation, "ontology: \"slots\" must be an array");
  }
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < slots_doc.size(); ++i) {
    const std::string where = "ontology slots[" + std::to_string(i) + "]";
    const json& entry = slots_doc[i];
    Slot slot;
    slot.name = detail::require_string(entry, "name", where);
    const json& values = detail::require(entry, "values", where);
    if (!values.is_array()) {
      throw Error(Errc::SchemaViolation, where + " (\"" + slot.name + "\"): \"values\" must be an array");
    }
    for (const json& v : values) {
      if (!v.is_string()) {
        throw Error(Errc::SchemaViolation, where + " (\"" + slot.name + "\"): values must be strings");
      }
      slot.values.push_back(v.get<std::string>());
    }
    slots.push_back(std::move(slot));
  }
  return Ontology(std::move(name), std::move(slots));
}

Ontology load_ontology(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_ontology_text(text);
}

const Ontology& gpt_negochat_ontology() {
  static const Ontology ontology = load_ontology_text(detail::kOntologyJson);
  return ontology;
}

}  // namespace agtrack
