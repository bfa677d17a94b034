// Copyright 2026 The xmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xmc/service/cli.h"

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "xmc/core/errors.h"
#include "xmc/core/manifest.h"
#include "xmc/core/stats.h"
#include "xmc/eval/report.h"
#include "xmc/service/config.h"
#include "xmc/service/serialize.h"
#include "xmc/service/server.h"
#include "xmc/synth/synthetic_corpus.h"

namespace xmc {
namespace {

namespace fs = std::filesystem;

struct UsageError {
  std::string message;
};

struct Options {
  std::string corpus = "corpus";
  std::string config;
  std::size_t threads = 0;
  std::optional<std::size_t> per_source_cap;

  // ingest
  std::string out;
  std::size_t min_person_docs = 0;
  std::size_t min_location_docs = 0;
  std::size_t min_event_docs = 0;

  // stats / score
  bool json = false;
  bool detail = false;
  std::vector<std::string> doc_ids;

  // tamper / evaluate / rank
  std::string type;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::string testset;
  std::string subset = "all";
  std::string csv;
  std::string scene_kind;
  std::string ap_mode = "standard";
  std::string order = "desc";
  std::size_t top = 20;

  // serve
  std::string host = "127.0.0.1";
  std::vector<std::string> testsets;

  // synth
  std::string preset = "separable";
  std::optional<std::size_t> documents;
};

EngineConfig LoadConfig(const Options& o) {
  return o.config.empty() ? EngineConfig{} : LoadEngineConfig(o.config);
}

Corpus LoadCorpus(const Options& o) {
  LoadOptions load;
  load.per_source_cap = o.per_source_cap;
  return LoadManifest(o.corpus, load);
}

void WriteOrPrint(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

TamperStrategy RequireStrategy(const Options& o) {
  if (o.type.empty() || o.strategy.empty()) {
    throw UsageError{"--type and --strategy are required"};
  }
  auto target = ParseTamperTarget(o.type);
  if (!target) throw UsageError{"unknown --type '" + o.type + "'"};
  auto strategy = ParseStrategy(*target, o.strategy);
  if (!strategy) {
    throw UsageError{"unknown --strategy '" + o.strategy + "' for " + o.type};
  }
  if (!o.seed) throw UsageError{"--seed is required for tampering"};
  return *strategy;
}

int Ingest(const Options& o, std::ostream& out) {
  Corpus corpus = LoadCorpus(o);
  MentionFrequencyFilter filter;
  filter.min_documents = {o.min_person_docs, o.min_location_docs, o.min_event_docs};
  if (o.min_person_docs || o.min_location_docs || o.min_event_docs) {
    corpus = FilterByMentionFrequency(corpus, filter);
  }
  out << "corpus " << corpus.id() << ": " << corpus.documents().size()
      << " documents, " << corpus.entities().size() << " entities\n";
  out << FormatStatsTable(ComputeCorpusStats(corpus));
  if (!o.out.empty()) {
    WriteManifest(corpus, o.out);
    out << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

int Stats(const Options& o, std::ostream& out) {
  const Corpus corpus = LoadCorpus(o);
  const CorpusStats stats = ComputeCorpusStats(corpus);
  if (o.json) {
    out << StatsToJson(stats).dump(2) << "\n";
  } else {
    out << FormatStatsTable(stats);
  }
  return kExitOk;
}

int Score(const Options& o, std::ostream& out) {
  const Corpus corpus = LoadCorpus(o);
  const EngineConfig config = LoadConfig(o);
  Scorer scorer(corpus, config.scoring, o.threads);
  std::vector<Document> docs;
  if (o.doc_ids.empty()) {
    docs = corpus.documents();
  } else {
    for (const auto& id : o.doc_ids) docs.push_back(corpus.document(id));
  }
  std::ostringstream text;
  for (const ScoredDocument& s : scorer.ScoreAll(docs)) {
    const auto j = o.detail ? ScoredDetailToJson(s, corpus, config) : ScoresToJson(s);
    text << j.dump() << "\n";
  }
  WriteOrPrint(o.out, text.str(), out);
  return kExitOk;
}

int TamperCommand(const Options& o, std::ostream& out) {
  const TamperStrategy strategy = RequireStrategy(o);
  if (o.out.empty()) throw UsageError{"--out is required"};
  const Corpus corpus = LoadCorpus(o);
  const TamperedTestSet ts = Tamper(corpus, strategy, *o.seed);
  WriteTestSet(ts, o.out);
  out << StrategyLabel(strategy) << ": " << ts.doc_ids().size()
      << " documents tampered, " << ts.fallback_log.size() << " fallbacks, "
      << ts.dropped.size() << " dropped\n";
  return kExitOk;
}

EvaluationConfig EvalConfig(const Options& o, const EngineConfig& engine) {
  EvaluationConfig eval;
  eval.scoring = engine.scoring;
  eval.recall_percents = engine.recall_percents;
  eval.threads = o.threads;
  auto subset = ParseSubset(o.subset);
  if (!subset) throw UsageError{"--subset must be all, top25 or top50"};
  eval.top_fraction = *subset;
  if (!o.scene_kind.empty()) {
    eval.scene_kind = ParseSceneKind(o.scene_kind);
    if (!eval.scene_kind) throw UsageError{"--scene-kind must be indoor or outdoor"};
  }
  if (o.ap_mode == "literal") {
    eval.ap_mode = ApMode::kLiteral;
  } else if (o.ap_mode != "standard") {
    throw UsageError{"--ap-mode must be standard or literal"};
  }
  return eval;
}

int Evaluate(const Options& o, std::ostream& out) {
  const EngineConfig engine = LoadConfig(o);
  const EvaluationConfig eval = EvalConfig(o, engine);
  std::optional<TamperStrategy> strategy;
  if (o.testset.empty()) strategy = RequireStrategy(o);
  const Corpus corpus = LoadCorpus(o);
  const TamperedTestSet ts =
      strategy ? Tamper(corpus, *strategy, *o.seed) : ReadTestSet(o.testset);
  const EvaluationReport report = CollectionRetrieval(corpus, ts, eval);
  if (!o.out.empty()) WriteTextFile(o.out, ReportToJson(report));
  if (!o.csv.empty()) {
    WriteTextFile(o.csv, ReportsToCsv(std::span<const EvaluationReport>(&report, 1)));
  }
  out << FormatReportTable(std::span<const EvaluationReport>(&report, 1));
  return kExitOk;
}

int Rank(const Options& o, std::ostream& out) {
  const EngineConfig engine = LoadConfig(o);
  RankOrder order;
  if (o.order == "desc") {
    order = RankOrder::kDescending;
  } else if (o.order == "asc") {
    order = RankOrder::kAscending;
  } else {
    throw UsageError{"--order must be asc or desc"};
  }
  const Corpus corpus = LoadCorpus(o);
  Scorer scorer(corpus, engine.scoring, o.threads);
  std::vector<RankedEntry> entries;
  if (!o.testset.empty()) {
    const TamperedTestSet ts = ReadTestSet(o.testset);
    if (ts.corpus_id != corpus.id()) {
      throw IntegrityError("test set belongs to corpus '" + ts.corpus_id + "'");
    }
    entries = RankPairs(EvaluationPairs(scorer, ts), order).entries();
  } else {
    if (o.type.empty()) throw UsageError{"--type or --testset is required"};
    auto measure = ParseMeasure(o.type);
    if (!measure) throw UsageError{"unknown --type '" + o.type + "'"};
    const auto values = scorer.ScoreAll(corpus.documents(), *measure);
    std::vector<RankedEntry> clean;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i].present()) {
        clean.push_back({corpus.documents()[i].id, Variant::kClean, *values[i].value});
      }
    }
    entries = RankedCollection(std::move(clean), order).entries();
  }
  const std::size_t n = std::min(o.top, entries.size());
  char line[256];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(line, sizeof(line), "%6zu  %-24s %-8s %.6f\n", i + 1,
                  entries[i].doc_id.c_str(),
                  std::string(ToString(entries[i].variant)).c_str(),
                  entries[i].score);
    out << line;
  }
  return kExitOk;
}

ApiServer* g_server = nullptr;

void StopServer(int) {
  if (g_server != nullptr) g_server->Stop();
}

int Serve(const Options& o, std::ostream& out) {
  const int port = PortFromEnvironment();
  ApiSession session(LoadConfig(o), o.threads);
  session.LoadCorpus(std::make_shared<const Corpus>(LoadCorpus(o)));
  for (const auto& arg : o.testsets) {
    const auto eq = arg.find('=');
    const std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
    const std::string name =
        eq == std::string::npos ? fs::path(arg).stem().string() : arg.substr(0, eq);
    session.AddTestSet(name, ReadTestSet(path));
  }
  ApiServer server(session);
  const int bound = server.Bind(o.host, port);
  out << "serving " << session.corpus()->id() << " on http://" << o.host << ":"
      << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  server.Listen();
  g_server = nullptr;
  return kExitOk;
}

int Synth(const Options& o, std::ostream& out) {
  SynthOptions synth;
  if (o.preset == "separable") {
    synth = SynthOptions::Separable();
  } else if (o.preset == "overlapping") {
    synth = SynthOptions::Overlapping();
  } else {
    throw UsageError{"--preset must be separable or overlapping"};
  }
  if (!o.seed) throw UsageError{"--seed is required"};
  if (o.out.empty()) throw UsageError{"--out is required"};
  synth.seed = *o.seed;
  if (o.documents) synth.documents = *o.documents;
  const Corpus corpus = GenerateSyntheticCorpus(synth);
  WriteManifest(corpus, o.out);
  out << "wrote " << corpus.documents().size() << " documents to " << o.out << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-modal entity consistency measurement", "xmc"};
  app.require_subcommand(1);
  Options o;

  auto corpus_opts = [&o](CLI::App* cmd, bool positional) {
    if (positional) {
      cmd->add_option("corpus", o.corpus, "Corpus directory or manifest.json")->required();
    } else {
      cmd->add_option("--corpus", o.corpus, "Corpus directory or manifest.json")
          ->capture_default_str();
    }
    cmd->add_option("--per-source-cap", o.per_source_cap,
                    "Maximum reference images per source");
  };
  auto config_opt = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Engine config file (JSON)");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "Validate a corpus and optionally rewrite it");
  corpus_opts(ingest, true);
  ingest->add_option("--out", o.out, "Write the validated corpus here");
  ingest->add_option("--min-person-docs", o.min_person_docs,
                     "Drop persons mentioned in fewer documents");
  ingest->add_option("--min-location-docs", o.min_location_docs,
                     "Drop locations mentioned in fewer documents");
  ingest->add_option("--min-event-docs", o.min_event_docs,
                     "Drop events mentioned in fewer documents");

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  corpus_opts(stats, true);
  stats->add_flag("--json", o.json, "JSON output");

  CLI::App* score = app.add_subcommand("score", "Score documents (JSON lines)");
  corpus_opts(score, true);
  config_opt(score);
  score->add_option("--doc", o.doc_ids, "Document id (repeatable; default all)");
  score->add_flag("--detail", o.detail, "Include breakdowns");
  score->add_option("--out", o.out, "Output file");

  CLI::App* tamper = app.add_subcommand("tamper", "Build a tampered test set");
  corpus_opts(tamper, false);
  tamper->add_option("--type", o.type, "person, location, event or context");
  tamper->add_option("--strategy", o.strategy, "Strategy name");
  tamper->add_option("--seed", o.seed, "Random seed");
  tamper->add_option("--out", o.out, "Test-set file");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Verification and retrieval metrics");
  corpus_opts(evaluate, false);
  config_opt(evaluate);
  evaluate->add_option("--testset", o.testset, "Test-set file");
  evaluate->add_option("--type", o.type, "Tamper on the fly: target");
  evaluate->add_option("--strategy", o.strategy, "Tamper on the fly: strategy");
  evaluate->add_option("--seed", o.seed, "Tamper on the fly: seed");
  evaluate->add_option("--subset", o.subset, "all, top25 or top50")->capture_default_str();
  evaluate->add_option("--scene-kind", o.scene_kind, "indoor or outdoor");
  evaluate->add_option("--ap-mode", o.ap_mode, "standard or literal")->capture_default_str();
  evaluate->add_option("--out", o.out, "Report JSON");
  evaluate->add_option("--csv", o.csv, "Report CSV");

  CLI::App* rank = app.add_subcommand("rank", "Rank documents by a measure");
  corpus_opts(rank, false);
  config_opt(rank);
  rank->add_option("--type", o.type, "person, location, event or context");
  rank->add_option("--testset", o.testset, "Rank clean and tampered variants");
  rank->add_option("--order", o.order, "asc or desc")->capture_default_str();
  rank->add_option("--top", o.top, "Rows to print")->capture_default_str();

  CLI::App* serve = app.add_subcommand(
      "serve", "HTTP API; port from XMC_PORT (default 8080)");
  corpus_opts(serve, false);
  config_opt(serve);
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--testset", o.testsets, "name=path (repeatable)");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--preset", o.preset, "separable or overlapping")->capture_default_str();
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("--documents", o.documents, "Number of documents");
  synth->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (ingest->parsed()) return Ingest(o, out);
    if (stats->parsed()) return Stats(o, out);
    if (score->parsed()) return Score(o, out);
    if (tamper->parsed()) return TamperCommand(o, out);
    if (evaluate->parsed()) return Evaluate(o, out);
    if (rank->parsed()) return Rank(o, out);
    if (serve->parsed()) return Serve(o, out);
    if (synth->parsed()) return Synth(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsageError;
}

}  // namespace xmc
