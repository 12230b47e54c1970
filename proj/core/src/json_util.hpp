#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "agtrack/error.hpp"

namespace agtrack::detail {

using nlohmann::json;

inline json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaViolation, std::string(what) + ": invalid JSON: " + e.what());
  }
}

inline const json& require(const json& obj, const char* key, std::string_view where) {
  if (!obj.is_object()) {
    throw Error(Errc::SchemaViolation, std::string(where) + ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(Errc::SchemaViolation, std::string(where) + ": missing \"" + key + "\"");
  }
  return *it;
}

inline std::string require_string(const json& obj, const char* key, std::string_view where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw Error(Errc::SchemaViolation, std::string(where) + ": \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace agtrack::detail
