#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "agtrack/lev.hpp"
#include "agtrack/metrics.hpp"
#include "agtrack/ontology.hpp"
#include "agtrack/prompt.hpp"
#include "agtrack/rng.hpp"
#include "agtrack/tracker.hpp"

namespace {

using namespace agtrack;

const Ontology& onto() { return gpt_negochat_ontology(); }

AgreementState random_state(Rng& rng) {
  AgreementState s;
  for (const Slot& slot : onto().slots()) {
    if (rng.coin()) s.set(slot.name, slot.values[rng.uniform(slot.values.size())]);
  }
  return s;
}

std::vector<std::pair<AgreementState, AgreementState>> state_pairs(std::size_t n) {
  Rng rng(1);
  std::vector<std::pair<AgreementState, AgreementState>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(random_state(rng), random_state(rng));
  return out;
}

// Dialogue whose acts alternate offers and acceptances, with gold filled
// in by the tracker so every turn is labelled.
AnnotatedDialogue synthetic_dialogue(Rng& rng, std::string id, std::size_t turns) {
  AnnotatedDialogue d;
  d.id = std::move(id);
  for (std::size_t t = 0; t < turns; ++t) {
    const Speaker who = t % 2 == 0 ? Speaker::Employer : Speaker::Candidate;
    const Slot& slot = onto().slots()[rng.uniform(onto().size())];
    Turn turn;
    turn.utterance = {who, "utterance " + std::to_string(t), t};
    if (t % 2 == 1 && rng.coin()) {
      turn.acts = std::vector<DialogueAct>{DialogueAct::accept()};
    } else {
      turn.acts = std::vector<DialogueAct>{DialogueAct::offer({{slot.name, slot.values[rng.uniform(slot.values.size())]}})};
    }
    d.turns.push_back(std::move(turn));
  }
  TrackerRun run = run_tracker(d);
  for (std::size_t t = 0; t < turns; ++t) d.turns[t].gold = run.states[t];
  return d;
}

Corpus synthetic_corpus(std::size_t dialogues) {
  Rng rng(2);
  Corpus corpus;
  for (std::size_t i = 0; i < dialogues; ++i) corpus.push_back(synthetic_dialogue(rng, "d" + std::to_string(i), 34));
  return corpus;
}

void BM_Diff(benchmark::State& state) {
  auto pairs = state_pairs(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(diff(a, b, onto()));
  }
}
BENCHMARK(BM_Diff);

void BM_Apply(benchmark::State& state) {
  auto pairs = state_pairs(1024);
  std::vector<LevSpan> spans;
  for (const auto& [a, b] : pairs) spans.push_back(diff(a, b, onto()));
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ % pairs.size();
    benchmark::DoNotOptimize(apply(pairs[k].first, spans[k]));
  }
}
BENCHMARK(BM_Apply);

void BM_Render(benchmark::State& state) {
  auto pairs = state_pairs(1024);
  std::vector<LevSpan> spans;
  for (const auto& [a, b] : pairs) spans.push_back(diff(a, b, onto()));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(render(spans[i++ % spans.size()]));
}
BENCHMARK(BM_Render);

void BM_Parse(benchmark::State& state) {
  const ParseMode mode = state.range(0) == 0 ? ParseMode::Lenient : ParseMode::Strict;
  auto pairs = state_pairs(1024);
  std::vector<std::string> texts;
  for (const auto& [a, b] : pairs) texts.push_back(render(diff(a, b, onto())));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(parse(texts[i++ % texts.size()], onto(), mode));
}
BENCHMARK(BM_Parse)->Arg(0)->Arg(1);

void BM_TrackerRun(benchmark::State& state) {
  Corpus corpus = synthetic_corpus(105);
  std::size_t turns = 0;
  for (auto _ : state) {
    for (const AnnotatedDialogue& d : corpus) {
      TrackerRun run = run_tracker(d);
      turns += run.states.size();
      benchmark::DoNotOptimize(run);
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(turns));
}
BENCHMARK(BM_TrackerRun)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  Corpus corpus = synthetic_corpus(105);
  std::vector<TurnRecord> golds = gold_records(corpus);
  std::vector<TurnRecord> preds = golds;
  Rng rng(3);
  for (TurnRecord& r : preds) {
    if (rng.uniform(4) == 0) r.state = random_state(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(preds, golds));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * golds.size()));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

void BM_EmitDataset(benchmark::State& state) {
  Corpus corpus = synthetic_corpus(105);
  EmitOptions options;
  options.clf = true;
  for (auto _ : state) {
    std::ostringstream sink;
    benchmark::DoNotOptimize(emit_dataset(corpus, onto(), options, sink));
  }
}
BENCHMARK(BM_EmitDataset)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
