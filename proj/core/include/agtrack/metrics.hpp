#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "agtrack/dialogue.hpp"
#include "agtrack/state.hpp"

namespace agtrack {

class Ontology;

struct TurnScore {
  bool exact_match = true;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const TurnScore&, const TurnScore&) = default;
};

/// Pair-level comparison. A slot present in both with different values is
/// one false positive and one false negative.
TurnScore score_turn(const AgreementState& pred, const AgreementState& gold);

/// A predicted or gold state for one turn of one dialogue.
struct TurnRecord {
  std::string dialogue_id;
  std::size_t turn = 0;
  AgreementState state;
  /// Set on predictions whose Lev text did not parse cleanly.
  bool unparseable = false;
};

struct SlotCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

struct EvalReport {
  double joint_slot_accuracy = 0.0;
  double joint_f1 = 0.0;
  std::size_t turns = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t unparseable = 0;
  std::vector<TurnScore> per_turn;  // in (dialogue_id, turn) order
  std::map<std::string, SlotCounts> per_slot;

  std::string to_json() const;
  void write_table(std::ostream& out) const;
};

/// Micro-F1 from summed counts; 1.0 when there are no pairs at all.
double micro_f1(std::size_t tp, std::size_t fp, std::size_t fn);

/// Joint slot accuracy is the mean exact match over turns (both-empty turns
/// match); joint F1 is micro-averaged over slot-value pairs. Inputs are
/// matched on (dialogue_id, turn) in any order. Throws Errc::Misaligned
/// naming the first key present on one side only, or on empty input.
EvalReport evaluate(std::vector<TurnRecord> preds, std::vector<TurnRecord> golds);

/// Gold records for every turn that carries a gold state.
std::vector<TurnRecord> gold_records(const Corpus& corpus);

enum class PredictionMode { State, Lev };

/// Reads the predictions JSONL. In Lev mode each dialogue's spans are parsed
/// leniently and applied recursively from the empty state in turn order;
/// defective spans are flagged unparseable but still scored.
std::vector<TurnRecord> load_predictions(std::istream& in, PredictionMode mode,
                                         const Ontology& ontology);

/// {"dialogue_id","turn","state":{...}} line.
std::string state_prediction_jsonl(const std::string& dialogue_id, std::size_t turn,
                                   const AgreementState& state);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct AggregateReport {
  std::size_t folds = 0;
  MetricSummary joint_slot_accuracy;
  MetricSummary joint_f1;

  std::string to_json() const;
};

/// Unweighted mean and population standard deviation across folds. Throws
/// Errc::EmptyInput on an empty list.
AggregateReport aggregate_folds(const std::vector<EvalReport>& reports);

}  // namespace agtrack
