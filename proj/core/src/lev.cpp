#include "agtrack/lev.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"

namespace agtrack {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool has_reserved(std::string_view s) {
  return s.find_first_of(";=[]") != std::string_view::npos;
}

[[noreturn]] void fail(Errc code, const std::string& message) { throw Error(code, message); }

// Parses one op fragment; throws on malformation.
EditOp parse_op(std::string_view fragment) {
  fragment = trim(fragment);
  if (fragment.empty()) fail(Errc::MalformedOp, "malformed op: empty fragment");
  std::size_t space = fragment.find_first_of(" \t\n\r");
  std::string_view keyword = fragment.substr(0, space);
  std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(fragment.substr(space));

  EditOp op;
  if (keyword == "insert") {
    op.kind = EditKind::Insert;
  } else if (keyword == "delete") {
    op.kind = EditKind::Delete;
  } else if (keyword == "substitute") {
    op.kind = EditKind::Substitute;
  } else {
    fail(Errc::UnknownOpKeyword, "unknown op keyword \"" + std::string(keyword) + "\"");
  }

  if (op.kind == EditKind::Delete) {
    if (rest.empty()) fail(Errc::MalformedOp, "malformed op: delete without slot");
    if (has_reserved(rest)) fail(Errc::MalformedOp, "malformed op: \"" + std::string(fragment) + "\"");
    op.slot = canonicalize(rest);
    return op;
  }

  std::size_t eq = rest.find('=');
  if (eq == std::string_view::npos) {
    if (rest.empty()) fail(Errc::MalformedOp, "malformed op: " + std::string(keyword) + " without slot");
    fail(Errc::MissingValue, "missing value in \"" + std::string(fragment) + "\"");
  }
  std::string_view slot = trim(rest.substr(0, eq));
  std::string_view value = trim(rest.substr(eq + 1));
  if (slot.empty() || has_reserved(slot)) {
    fail(Errc::MalformedOp, "malformed op: \"" + std::string(fragment) + "\"");
  }
  if (value.empty()) fail(Errc::MissingValue, "missing value in \"" + std::string(fragment) + "\"");
  if (has_reserved(value)) fail(Errc::MalformedOp, "malformed op: \"" + std::string(fragment) + "\"");
  op.slot = canonicalize(slot);
  op.value = canonicalize(value);
  return op;
}

}  // namespace

bool is_known_domain(std::string_view domain) {
  return domain == kNegochatDomain || domain == kMultiwozDomain;
}

std::string_view to_string(EditKind kind) noexcept {
  switch (kind) {
    case EditKind::Insert: return "insert";
    case EditKind::Delete: return "delete";
    case EditKind::Substitute: return "substitute";
  }
  return "?";
}

void normalize_order(LevSpan& span, const Ontology& ontology) {
  SlotOrder less{&ontology};
  std::stable_sort(span.ops.begin(), span.ops.end(),
                   [&](const EditOp& a, const EditOp& b) { return less(a.slot, b.slot); });
}

LevSpan diff(const AgreementState& prev, const AgreementState& cur,
             const Ontology& ontology, std::string_view domain) {
  LevSpan span;
  span.domain = std::string(domain);
  for (const auto& [slot, value] : cur.entries()) {
    auto before = prev.get(slot);
    if (!before) {
      span.ops.push_back({EditKind::Insert, slot, value});
    } else if (*before != value) {
      span.ops.push_back({EditKind::Substitute, slot, value});
    }
  }
  for (const auto& [slot, value] : prev.entries()) {
    if (!cur.contains(slot)) span.ops.push_back({EditKind::Delete, slot, std::nullopt});
  }
  normalize_order(span, ontology);
  return span;
}

AgreementState apply(const AgreementState& prev, const LevSpan& span, ApplyMode mode) {
  AgreementState out = prev;
  const bool strict = mode == ApplyMode::Strict;
  for (const EditOp& op : span.ops) {
    const bool present = out.contains(op.slot);
    switch (op.kind) {
      case EditKind::Insert:
        if (strict && present) fail(Errc::ApplyConflict, "conflict: " + render(op) + " on existing slot");
        out.set(op.slot, op.value.value_or(""));
        break;
      case EditKind::Substitute:
        if (strict && !present) fail(Errc::ApplyConflict, "conflict: " + render(op) + " on missing slot");
        out.set(op.slot, op.value.value_or(""));
        break;
      case EditKind::Delete:
        if (strict && !present) fail(Errc::ApplyConflict, "conflict: " + render(op) + " on missing slot");
        out.erase(op.slot);
        break;
    }
  }
  return out;
}

std::string render(const EditOp& op) {
  std::string out(to_string(op.kind));
  out += ' ';
  out += op.slot;
  if (op.kind != EditKind::Delete) {
    out += " = ";
    out += op.value.value_or("");
  }
  return out;
}

std::string render(const LevSpan& span) {
  std::string out = "[" + span.domain + "]";
  for (std::size_t i = 0; i < span.ops.size(); ++i) {
    out += i == 0 ? " " : " ; ";
    out += render(span.ops[i]);
  }
  return out;
}

ParseResult parse(std::string_view text, const Ontology& ontology, ParseMode mode) {
  const bool strict = mode == ParseMode::Strict;
  ParseResult result;
  result.span.domain = ontology.name();

  std::string_view body = trim(text);
  if (body.empty() || body.front() != '[') {
    if (strict) fail(Errc::MissingDomainPrefix, "missing domain prefix");
    result.missing_prefix = true;
  } else {
    std::size_t close = body.find(']');
    if (close == std::string_view::npos) {
      if (strict) fail(Errc::MissingDomainPrefix, "missing domain prefix: unterminated \"[\"");
      result.missing_prefix = true;
      body.remove_prefix(1);
    } else {
      std::string_view domain = trim(body.substr(1, close - 1));
      if (domain.empty()) {
        if (strict) fail(Errc::MissingDomainPrefix, "missing domain prefix: empty \"[]\"");
        result.missing_prefix = true;
      } else {
        std::string canon = canonicalize(domain);
        if (strict && !is_known_domain(canon)) {
          fail(Errc::UnknownDomain, "unknown domain \"" + canon + "\"");
        }
        result.span.domain = std::move(canon);
      }
      body = body.substr(close + 1);
    }
  }

  body = trim(body);
  if (body.empty()) return result;

  std::set<std::string, std::less<>> seen;
  for (std::string_view fragment : split(body, ';')) {
    EditOp op;
    try {
      op = parse_op(fragment);
    } catch (const Error&) {
      if (strict) throw;
      ++result.dropped;
      continue;
    }
    if (strict) {
      if (!ontology.has_slot(op.slot)) fail(Errc::UnknownSlot, "unknown slot \"" + op.slot + "\"");
      if (op.value && !ontology.is_legal(op.slot, *op.value)) {
        fail(Errc::IllegalValue, "illegal value \"" + *op.value + "\" for slot \"" + op.slot + "\"");
      }
    }
    if (!seen.insert(op.slot).second) {
      if (strict) fail(Errc::DuplicateOpSlot, "slot \"" + op.slot + "\" appears in more than one op");
      ++result.dropped;
      continue;
    }
    result.span.ops.push_back(std::move(op));
  }
  normalize_order(result.span, ontology);
  return result;
}

LevSpan parse_strict(std::string_view text, const Ontology& ontology) {
  return parse(text, ontology, ParseMode::Strict).span;
}

std::string render_state(const AgreementState& state, const Ontology& ontology) {
  if (state.empty()) return "none";
  std::string out;
  for (const auto& [slot, value] : state.ordered(ontology)) {
    if (!out.empty()) out += " ; ";
    out += slot;
    out += " = ";
    out += value;
  }
  return out;
}

AgreementState parse_state(std::string_view text) {
  text = trim(text);
  AgreementState state;
  if (text == "none") return state;
  for (std::string_view fragment : split(text, ';')) {
    std::size_t eq = fragment.find('=');
    if (eq == std::string_view::npos) {
      fail(Errc::MalformedOp, "malformed state entry \"" + std::string(trim(fragment)) + "\"");
    }
    std::string_view slot = trim(fragment.substr(0, eq));
    std::string_view value = trim(fragment.substr(eq + 1));
    if (slot.empty() || value.empty() || has_reserved(value)) {
      fail(Errc::MalformedOp, "malformed state entry \"" + std::string(trim(fragment)) + "\"");
    }
    std::string key = canonicalize(slot);
    if (state.contains(key)) fail(Errc::DuplicateOpSlot, "slot \"" + key + "\" repeated in state");
    state.set(std::move(key), canonicalize(value));
  }
  return state;
}

}  // namespace agtrack
