#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "agtrack/dialogue.hpp"
#include "agtrack/error.hpp"
#include "agtrack/metrics.hpp"
#include "agtrack/ontology.hpp"
#include "agtrack/prompt.hpp"
#include "agtrack/splits.hpp"
#include "agtrack/tracker.hpp"

namespace agtrack::cli {

namespace {

struct GlobalOptions {
  std::uint64_t seed = 13;
  std::string ontology_path;
  std::string aliases_path;
  bool strict = false;
};

class Context {
 public:
  Context(const GlobalOptions& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const GlobalOptions& globals() const { return g_; }

  const Ontology& ontology() {
    if (g_.ontology_path.empty()) return gpt_negochat_ontology();
    if (!custom_ontology_) {
      std::ifstream in = open_in(g_.ontology_path);
      custom_ontology_ = load_ontology(in);
    }
    return *custom_ontology_;
  }

  // Built-in aliases accompany the built-in ontology only.
  const AliasTable& aliases() {
    if (!g_.aliases_path.empty()) {
      if (!custom_aliases_) {
        std::ifstream in = open_in(g_.aliases_path);
        custom_aliases_ = load_aliases(in);
      }
      return *custom_aliases_;
    }
    if (g_.ontology_path.empty()) return gpt_negochat_aliases();
    return no_aliases_;
  }

  Corpus corpus(const std::string& path, LoadReport* report = nullptr) {
    std::ifstream in = open_in(path);
    LoadOptions options{g_.strict, &aliases()};
    return load_corpus(in, ontology(), options, report);
  }

  static std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open \"" + path + "\" for reading");
    return in;
  }

  static void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::Io, "cannot open \"" + path + "\" for writing");
    f << content;
    f.flush();
    if (!f) throw Error(Errc::Io, "failed writing \"" + path + "\"");
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<Ontology> custom_ontology_;
  std::optional<AliasTable> custom_aliases_;
  AliasTable no_aliases_;
};

std::vector<const AnnotatedDialogue*> sorted_by_id(const Corpus& corpus) {
  std::vector<const AnnotatedDialogue*> order;
  for (const AnnotatedDialogue& d : corpus) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });
  return order;
}

// --- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::string corpus;
  std::string report;
};

int cmd_validate(Context& ctx, const ValidateArgs& a) {
  LoadReport report;
  Corpus corpus = ctx.corpus(a.corpus, &report);
  report.write_lines(ctx.err());
  if (!a.report.empty()) Context::write_file(a.report, report.to_json() + "\n");
  ctx.out() << "ok: " << report.dialogues << " dialogues, " << report.raw_utterances
            << " utterances, " << report.warnings.size() << " warnings ("
            << (ctx.globals().strict ? "strict" : "lenient") << ")\n";
  return kExitOk;
}

// --- stats ------------------------------------------------------------------

struct StatsArgs {
  std::string corpus;
  std::string json;
};

int cmd_stats(Context& ctx, const StatsArgs& a) {
  Corpus corpus = ctx.corpus(a.corpus);
  StatsReport stats = dialogue_stats(corpus);
  stats.write_table(ctx.out());
  if (!a.json.empty()) Context::write_file(a.json, stats.to_json() + "\n");
  return kExitOk;
}

// --- track ------------------------------------------------------------------

struct TrackArgs {
  std::string corpus;
  std::string out;
  std::string diagnostics;
  bool freeze_agreed = false;
};

int cmd_track(Context& ctx, const TrackArgs& a) {
  Corpus corpus = ctx.corpus(a.corpus);
  TrackerConfig config;
  config.freeze_agreed = a.freeze_agreed;

  std::ostringstream predictions;
  std::ostringstream diagnostics;
  std::vector<TurnRecord> preds;
  bool have_gold = true;
  for (const AnnotatedDialogue* d : sorted_by_id(corpus)) {
    TrackerRun result = run_tracker(*d, config);
    for (std::size_t t = 0; t < result.states.size(); ++t) {
      predictions << state_prediction_jsonl(d->id, t, result.states[t]) << '\n';
      preds.push_back({d->id, t, result.states[t], false});
      have_gold = have_gold && d->turns[t].gold.has_value();
    }
    for (const TrackerDiagnostic& diag : result.diagnostics) {
      diagnostics << d->id << '\t' << diag.turn << '\t' << to_string(diag.speaker) << '\t'
                  << to_string(diag.event);
      if (!diag.slot.empty()) diagnostics << '\t' << diag.slot << '\t' << diag.value;
      diagnostics << '\n';
    }
  }
  Context::write_file(a.out, predictions.str());
  if (!a.diagnostics.empty()) {
    Context::write_file(a.diagnostics, diagnostics.str());
  } else {
    ctx.err() << diagnostics.str();
  }
  ctx.out() << "wrote " << preds.size() << " turn predictions to " << a.out << '\n';
  if (have_gold) {
    EvalReport report = evaluate(std::move(preds), gold_records(corpus));
    ctx.out() << "joint slot accuracy vs gold: " << report.joint_slot_accuracy
              << "  joint F1: " << report.joint_f1 << '\n';
  }
  return kExitOk;
}

// --- emit -------------------------------------------------------------------

struct EmitArgs {
  std::string corpus;
  std::string out;
  std::vector<std::string> tasks{"gen"};
  std::size_t window = kDefaultWindow;
  std::string domain{kNegochatDomain};
};

int cmd_emit(Context& ctx, const EmitArgs& a) {
  Corpus corpus = ctx.corpus(a.corpus);
  EmitOptions options;
  options.gen = std::find(a.tasks.begin(), a.tasks.end(), "gen") != a.tasks.end();
  options.clf = std::find(a.tasks.begin(), a.tasks.end(), "clf") != a.tasks.end();
  options.window = a.window;
  options.domain = a.domain;
  options.seed = ctx.globals().seed;
  std::ostringstream buffer;
  std::size_t lines = emit_dataset(corpus, ctx.ontology(), options, buffer);
  Context::write_file(a.out, buffer.str());
  ctx.out() << "wrote " << lines << " examples to " << a.out << '\n';
  return kExitOk;
}

// --- split ------------------------------------------------------------------

struct SplitArgs {
  std::string corpus;
  std::string out;
  std::vector<int> fractions{100};
};

int cmd_split(Context& ctx, const SplitArgs& a) {
  Corpus corpus = ctx.corpus(a.corpus);
  std::vector<std::string> ids;
  for (const AnnotatedDialogue& d : corpus) ids.push_back(d.id);
  std::vector<SplitPlan> base = make_splits(ids, ctx.globals().seed);
  std::vector<SplitPlan> plans;
  for (int fraction : a.fractions) {
    for (const SplitPlan& plan : base) plans.push_back(fractional_subset(plan, fraction));
  }
  Context::write_file(a.out, manifest_json(plans) + "\n");
  for (const SplitPlan& p : plans) {
    ctx.out() << "fold " << p.fold << " @" << p.fraction << "%: train " << p.train.size() << ", val "
              << p.val.size() << ", test " << p.test.size() << '\n';
  }
  return kExitOk;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string predictions;
  std::string gold;
  std::string mode = "state";
  std::string report;
  std::string manifest;
  int fold = -1;
};

int cmd_eval(Context& ctx, const EvalArgs& a) {
  Corpus corpus = ctx.corpus(a.gold);
  std::vector<TurnRecord> golds = gold_records(corpus);
  if (!a.manifest.empty()) {
    std::ifstream in = Context::open_in(a.manifest);
    std::vector<SplitPlan> plans = load_manifest(in);
    auto it = std::find_if(plans.begin(), plans.end(),
                           [&](const SplitPlan& p) { return static_cast<int>(p.fold) == a.fold; });
    if (it == plans.end()) throw Error(Errc::SchemaViolation, "manifest has no fold " + std::to_string(a.fold));
    std::set<std::string> test(it->test.begin(), it->test.end());
    std::erase_if(golds, [&](const TurnRecord& r) { return !test.count(r.dialogue_id); });
  }

  std::ifstream in = Context::open_in(a.predictions);
  const PredictionMode mode = a.mode == "lev" ? PredictionMode::Lev : PredictionMode::State;
  std::vector<TurnRecord> preds = load_predictions(in, mode, ctx.ontology());
  EvalReport report = evaluate(std::move(preds), std::move(golds));
  report.write_table(ctx.out());
  if (!a.report.empty()) Context::write_file(a.report, report.to_json() + "\n");
  return kExitOk;
}

// --- ontology-dump ----------------------------------------------------------

int cmd_ontology_dump(Context& ctx, const std::string& out) {
  const std::string json = ctx.ontology().to_json() + "\n";
  if (out.empty()) {
    ctx.out() << json;
  } else {
    Context::write_file(out, json);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"agtrack: agreement tracking toolkit for negotiation dialogues", "agtrack"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--ontology", g.ontology_path, "Ontology JSON (default: built-in gpt-negochat)");
  app.add_option("--aliases", g.aliases_path, "Alias table JSON (default: built-in, with the built-in ontology)");
  app.add_flag("--strict", g.strict, "Fail on out-of-ontology annotations instead of warning");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Load and validate a corpus");
  validate_cmd->add_option("corpus", validate.corpus)->required();
  validate_cmd->add_option("--report", validate.report, "Write the load report as JSON");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("corpus", stats.corpus)->required();
  stats_cmd->add_option("--json", stats.json, "Also write the statistics as JSON");

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "Run the rule-based tracker over gold dialogue acts");
  track_cmd->add_option("corpus", track.corpus)->required();
  track_cmd->add_option("--out", track.out, "Predictions JSONL")->required();
  track_cmd->add_option("--diagnostics", track.diagnostics, "Write tracker diagnostics here instead of stderr");
  track_cmd->add_flag("--freeze-agreed", track.freeze_agreed, "Ignore offers on already agreed slots");

  EmitArgs emit;
  auto* emit_cmd = app.add_subcommand("emit", "Write Gen/Clf training examples as JSONL");
  emit_cmd->add_option("corpus", emit.corpus)->required();
  emit_cmd->add_option("--out", emit.out, "Output JSONL")->required();
  emit_cmd->add_option("--tasks", emit.tasks, "Tasks to emit: gen, clf")
      ->delimiter(',')
      ->check(CLI::IsMember({"gen", "clf"}))
      ->capture_default_str();
  emit_cmd->add_option("--window", emit.window, "Context window in merged turns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  emit_cmd->add_option("--domain", emit.domain, "Dataset prefix")->capture_default_str();

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Write 3-fold cross-validation manifests");
  split_cmd->add_option("corpus", split.corpus)->required();
  split_cmd->add_option("--out", split.out, "Manifest JSON")->required();
  split_cmd->add_option("--fractions", split.fractions, "Training fractions in percent")
      ->delimiter(',')
      ->check(CLI::IsMember(std::vector<int>(kFractions.begin(), kFractions.end())))
      ->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold states");
  eval_cmd->add_option("predictions", eval.predictions)->required();
  eval_cmd->add_option("gold", eval.gold, "Gold corpus JSON")->required();
  eval_cmd->add_option("--mode", eval.mode, "Prediction format")
      ->check(CLI::IsMember({"state", "lev"}))
      ->capture_default_str();
  eval_cmd->add_option("--report", eval.report, "Write the report as JSON");
  auto* manifest_opt = eval_cmd->add_option("--manifest", eval.manifest, "Restrict gold to a fold's test set");
  eval_cmd->add_option("--fold", eval.fold, "Fold index used with --manifest")->needs(manifest_opt);

  std::string dump_out;
  auto* dump_cmd = app.add_subcommand("ontology-dump", "Print the active ontology as JSON");
  dump_cmd->add_option("--out", dump_out, "Write to a file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return e.get_exit_code() == 0 ? code : kExitUsage;
  }
  if (eval_cmd->parsed() && !eval.manifest.empty() && eval.fold < 0) {
    err << "agtrack: --manifest requires --fold\n";
    return kExitUsage;
  }

  Context ctx(g, out, err);
  try {
    if (validate_cmd->parsed()) return cmd_validate(ctx, validate);
    if (stats_cmd->parsed()) return cmd_stats(ctx, stats);
    if (track_cmd->parsed()) return cmd_track(ctx, track);
    if (emit_cmd->parsed()) return cmd_emit(ctx, emit);
    if (split_cmd->parsed()) return cmd_split(ctx, split);
    if (eval_cmd->parsed()) return cmd_eval(ctx, eval);
    if (dump_cmd->parsed()) return cmd_ontology_dump(ctx, dump_out);
  } catch (const Error& e) {
    err << "agtrack: error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "agtrack: error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace agtrack::cli
