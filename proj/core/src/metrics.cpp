#include "agtrack/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "agtrack/error.hpp"
#include "agtrack/lev.hpp"
#include "agtrack/ontology.hpp"
#include "json_util.hpp"

namespace agtrack {

using detail::json;

TurnScore score_turn(const AgreementState& pred, const AgreementState& gold) {
  TurnScore s;
  for (const auto& [slot, value] : pred.entries()) {
    auto g = gold.get(slot);
    if (g && *g == value) {
      ++s.tp;
    } else {
      ++s.fp;
    }
  }
  for (const auto& [slot, value] : gold.entries()) {
    auto p = pred.get(slot);
    if (!p || *p != value) ++s.fn;
  }
  s.exact_match = s.fp == 0 && s.fn == 0;
  return s;
}

double SlotCounts::precision() const {
  return tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}
double SlotCounts::recall() const {
  return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}
double SlotCounts::f1() const { return micro_f1(tp, fp, fn); }

double micro_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(2 * tp) / static_cast<double>(denom);
}

namespace {

using Key = std::pair<std::string, std::size_t>;

std::string describe(const Key& key) {
  return "dialogue \"" + key.first + "\" turn " + std::to_string(key.second);
}

std::map<Key, TurnRecord> index(std::vector<TurnRecord> records, std::string_view side) {
  std::map<Key, TurnRecord> out;
  for (TurnRecord& r : records) {
    Key key{r.dialogue_id, r.turn};
    if (out.count(key)) {
      throw Error(Errc::Misaligned, std::string(side) + " has duplicate entry for " + describe(key));
    }
    out.emplace(std::move(key), std::move(r));
  }
  return out;
}

void count_slots(const AgreementState& pred, const AgreementState& gold,
                 std::map<std::string, SlotCounts>& per_slot) {
  for (const auto& [slot, value] : pred.entries()) {
    auto g = gold.get(slot);
    if (g && *g == value) {
      ++per_slot[slot].tp;
    } else {
      ++per_slot[slot].fp;
    }
  }
  for (const auto& [slot, value] : gold.entries()) {
    auto p = pred.get(slot);
    if (!p || *p != value) ++per_slot[slot].fn;
  }
}

}  // namespace

EvalReport evaluate(std::vector<TurnRecord> preds, std::vector<TurnRecord> golds) {
  const auto pred_index = index(std::move(preds), "predictions");
  const auto gold_index = index(std::move(golds), "gold");
  if (pred_index.empty() && gold_index.empty()) {
    throw Error(Errc::Misaligned, "no turns to evaluate");
  }

  auto p = pred_index.begin();
  auto g = gold_index.begin();
  while (p != pred_index.end() || g != gold_index.end()) {
    if (g == gold_index.end() || (p != pred_index.end() && p->first < g->first)) {
      throw Error(Errc::Misaligned, "prediction without gold for " + describe(p->first));
    }
    if (p == pred_index.end() || g->first < p->first) {
      throw Error(Errc::Misaligned, "missing prediction for " + describe(g->first));
    }
    ++p;
    ++g;
  }

  EvalReport report;
  std::size_t matches = 0;
  for (const auto& [key, gold] : gold_index) {
    const TurnRecord& pred = pred_index.at(key);
    TurnScore s = score_turn(pred.state, gold.state);
    matches += s.exact_match ? 1 : 0;
    report.tp += s.tp;
    report.fp += s.fp;
    report.fn += s.fn;
    report.unparseable += pred.unparseable ? 1 : 0;
    count_slots(pred.state, gold.state, report.per_slot);
    report.per_turn.push_back(s);
  }
  report.turns = gold_index.size();
  report.joint_slot_accuracy = static_cast<double>(matches) / static_cast<double>(report.turns);
  report.joint_f1 = micro_f1(report.tp, report.fp, report.fn);
  return report;
}

std::vector<TurnRecord> gold_records(const Corpus& corpus) {
  std::vector<TurnRecord> out;
  for (const AnnotatedDialogue& d : corpus) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      if (d.turns[t].gold) out.push_back({d.id, t, *d.turns[t].gold, false});
    }
  }
  return out;
}

std::vector<TurnRecord> load_predictions(std::istream& in, PredictionMode mode, const Ontology& ontology) {
  struct LevLine {
    std::size_t turn;
    std::string text;
  };
  std::vector<TurnRecord> out;
  std::map<std::string, std::vector<LevLine>> levs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "predictions line " + std::to_string(line_no);
    json doc = detail::parse_json(line, where);
    std::string id = detail::require_string(doc, "dialogue_id", where);
    const json& turn_doc = detail::require(doc, "turn", where);
    if (!turn_doc.is_number_unsigned()) throw Error(Errc::SchemaViolation, where + ": bad \"turn\"");
    const std::size_t turn = turn_doc.get<std::size_t>();

    if (mode == PredictionMode::Lev) {
      levs[id].push_back({turn, detail::require_string(doc, "lev", where)});
      continue;
    }
    const json& state_doc = detail::require(doc, "state", where);
    if (!state_doc.is_object()) throw Error(Errc::SchemaViolation, where + ": \"state\" must be an object");
    AgreementState state;
    for (const auto& [slot, value] : state_doc.items()) {
      if (!value.is_string()) throw Error(Errc::SchemaViolation, where + ": state values must be strings");
      try {
        state.set(canonicalize(slot), canonicalize(value.get<std::string>()));
      } catch (const Error&) {
        throw Error(Errc::SchemaViolation, where + ": empty slot or value in state");
      }
    }
    out.push_back({std::move(id), turn, std::move(state), false});
  }

  for (auto& [id, lines] : levs) {
    std::stable_sort(lines.begin(), lines.end(),
                     [](const LevLine& a, const LevLine& b) { return a.turn < b.turn; });
    AgreementState state;
    for (const LevLine& l : lines) {
      ParseResult parsed = parse(l.text, ontology, ParseMode::Lenient);
      state = apply(state, parsed.span, ApplyMode::Lenient);
      out.push_back({id, l.turn, state, parsed.defective()});
    }
  }
  return out;
}

std::string state_prediction_jsonl(const std::string& dialogue_id, std::size_t turn,
                                   const AgreementState& state) {
  nlohmann::ordered_json doc;
  doc["dialogue_id"] = dialogue_id;
  doc["turn"] = turn;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [slot, value] : state.entries()) s[slot] = value;
  doc["state"] = std::move(s);
  return doc.dump();
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["conventions"] = {{"joint_f1", "micro-averaged over slot-value pairs"},
                        {"empty_turns", "both-empty turns count as exact matches"}};
  doc["joint_slot_accuracy"] = joint_slot_accuracy;
  doc["joint_f1"] = joint_f1;
  doc["turns"] = turns;
  doc["tp"] = tp;
  doc["fp"] = fp;
  doc["fn"] = fn;
  doc["unparseable"] = unparseable;
  nlohmann::ordered_json slots = nlohmann::ordered_json::object();
  for (const auto& [slot, c] : per_slot) {
    slots[slot] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn},
                   {"precision", c.precision()}, {"recall", c.recall()}, {"f1", c.f1()}};
  }
  doc["per_slot"] = std::move(slots);
  return doc.dump(2);
}

void EvalReport::write_table(std::ostream& out) const {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4);
  s << "# joint F1 is micro-averaged over slot-value pairs; both-empty turns count as matches\n";
  s << "joint slot accuracy  " << joint_slot_accuracy << '\n'
    << "joint F1             " << joint_f1 << '\n'
    << "turns                " << turns << '\n'
    << "tp/fp/fn             " << tp << '/' << fp << '/' << fn << '\n'
    << "unparseable          " << unparseable << '\n';
  if (!per_slot.empty()) {
    s << std::left << std::setw(26) << "slot" << std::right << std::setw(10) << "precision"
      << std::setw(10) << "recall" << std::setw(10) << "f1" << '\n';
    for (const auto& [slot, c] : per_slot) {
      s << std::left << std::setw(26) << slot << std::right << std::setw(10) << c.precision()
        << std::setw(10) << c.recall() << std::setw(10) << c.f1() << '\n';
    }
  }
  out << s.str();
}

namespace {

MetricSummary summarize(const std::vector<double>& xs) {
  MetricSummary m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return m;
}

}  // namespace

AggregateReport aggregate_folds(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw Error(Errc::EmptyInput, "aggregate_folds: no fold reports");
  std::vector<double> acc;
  std::vector<double> f1;
  for (const EvalReport& r : reports) {
    acc.push_back(r.joint_slot_accuracy);
    f1.push_back(r.joint_f1);
  }
  return {reports.size(), summarize(acc), summarize(f1)};
}

std::string AggregateReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["folds"] = folds;
  doc["joint_slot_accuracy"] = {{"mean", joint_slot_accuracy.mean}, {"std", joint_slot_accuracy.stddev}};
  doc["joint_f1"] = {{"mean", joint_f1.mean}, {"std", joint_f1.stddev}};
  return doc.dump(2);
}

}  // namespace agtrack
