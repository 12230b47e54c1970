#pragma once

#include <string_view>

namespace agtrack::detail {

extern const std::string_view kOntologyJson;
extern const std::string_view kAliasesJson;

}  // namespace agtrack::detail
