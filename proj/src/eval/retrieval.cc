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

#include "xmc/eval/retrieval.h"

#include <algorithm>

#include "xmc/core/errors.h"

namespace xmc {

void EvaluationConfig::Validate() const {
  scoring.Validate();
  if (top_fraction && !(*top_fraction > 0.0 && *top_fraction < 1.0)) {
    throw InvalidArgument("subset fraction must be in (0, 1)");
  }
  if (recall_percents.empty()) throw InvalidArgument("no recall levels");
  for (int r : recall_percents) {
    if (r != 25 && r != 50 && r != 100) {
      throw InvalidArgument("recall level must be 25, 50 or 100, got " + std::to_string(r));
    }
  }
}

std::optional<std::optional<double>> ParseSubset(std::string_view text) {
  if (text == "all") return std::optional<double>{};
  if (text == "top25") return std::optional<double>{0.25};
  if (text == "top50") return std::optional<double>{0.50};
  return std::nullopt;
}

std::string SubsetName(const std::optional<double>& top_fraction) {
  if (!top_fraction) return "all";
  return "top" + std::to_string(static_cast<int>(std::lround(*top_fraction * 100.0)));
}

std::string EvaluationReport::TestSetTitle() const {
  std::string title;
  switch (target) {
    case TamperTarget::kPerson:
      title = "Persons";
      break;
    case TamperTarget::kLocation:
      title = "Locations";
      break;
    case TamperTarget::kEvent:
      title = "Events";
      break;
    case TamperTarget::kContext:
      title = "Context";
      break;
  }
  if (scene_kind) title += scene_kind == SceneKind::kIndoor ? " (indoor)" : " (outdoor)";
  return title + ": " + strategy_label;
}

std::vector<DocPair> EvaluationPairs(const Scorer& scorer,
                                     const TamperedTestSet& testset,
                                     std::optional<SceneKind> scene_kind) {
  const Corpus& corpus = scorer.corpus();
  if (testset.corpus_id != corpus.id()) {
    throw IntegrityError("test set was built for corpus '" + testset.corpus_id +
                         "', not '" + corpus.id() + "'");
  }
  const Measure measure = MeasureFor(testset.target());
  std::vector<const Document*> clean;
  for (const std::string& id : testset.doc_ids()) {
    const Document& doc = corpus.document(id);
    if (scene_kind && doc.image.scene_kind != scene_kind) continue;
    clean.push_back(&doc);
  }
  std::vector<std::optional<DocPair>> slots(clean.size());
  ParallelFor(clean.size(), scorer.threads(), [&](std::size_t i) {
    const Document& doc = *clean[i];
    const MeasureValue c = scorer.ScoreMeasure(doc, measure);
    if (!c.present()) return;
    const MeasureValue t =
        scorer.ScoreMeasure(ApplyTampering(corpus, testset, doc), measure);
    if (!t.present()) return;
    slots[i] = DocPair{doc.id, *c.value, *t.value};
  });
  std::vector<DocPair> pairs;
  for (auto& s : slots) {
    if (s) pairs.push_back(std::move(*s));
  }
  return pairs;
}

std::vector<DocPair> SelectSubset(const std::vector<DocPair>& pairs,
                                  double top_fraction) {
  std::vector<DocScore> scores;
  scores.reserve(pairs.size());
  for (const DocPair& p : pairs) scores.push_back({p.doc_id, p.clean});
  const std::set<std::string> keep = TopKSubset(scores, top_fraction);
  std::vector<DocPair> out;
  for (const DocPair& p : pairs) {
    if (keep.contains(p.doc_id)) out.push_back(p);
  }
  return out;
}

RankedCollection RankPairs(const std::vector<DocPair>& pairs, RankOrder order) {
  std::vector<RankedEntry> entries;
  entries.reserve(2 * pairs.size());
  for (const DocPair& p : pairs) {
    entries.push_back({p.doc_id, Variant::kClean, p.clean});
    entries.push_back({p.doc_id, Variant::kTampered, p.tampered});
  }
  return RankedCollection(std::move(entries), order);
}

EvaluationReport CollectionRetrieval(const Scorer& scorer,
                                     const TamperedTestSet& testset,
                                     const EvaluationConfig& config) {
  config.Validate();
  std::vector<DocPair> pairs = EvaluationPairs(scorer, testset, config.scene_kind);
  if (config.top_fraction) pairs = SelectSubset(pairs, *config.top_fraction);
  if (pairs.empty()) {
    throw EmptyInput("no document has both a clean and a tampered " +
                     std::string(ToString(MeasureFor(testset.target()))));
  }

  EvaluationReport report;
  report.corpus_id = testset.corpus_id;
  report.target = testset.target();
  report.strategy = StrategyName(testset.strategy);
  report.strategy_label = StrategyLabel(testset.strategy);
  report.seed = testset.seed;
  report.subset = SubsetName(config.top_fraction);
  report.scene_kind = config.scene_kind;
  report.ap_mode = config.ap_mode == ApMode::kStandard ? "standard" : "literal";
  report.n_documents = pairs.size();

  std::vector<ScorePair> score_pairs;
  std::vector<double> clean;
  std::vector<double> tampered;
  for (const DocPair& p : pairs) {
    score_pairs.push_back({p.clean, p.tampered});
    clean.push_back(p.clean);
    tampered.push_back(p.tampered);
  }
  report.va = VerificationAccuracy(score_pairs);
  report.auc = RocAuc(clean, tampered);

  const RankedCollection desc = RankPairs(pairs, RankOrder::kDescending);
  const RankedCollection asc = RankPairs(pairs, RankOrder::kAscending);
  for (int r : config.recall_percents) {
    const double recall = r / 100.0;
    report.ap_clean[r] = ApAtRecall(desc, Variant::kClean, recall, config.ap_mode);
    report.ap_tampered[r] = ApAtRecall(asc, Variant::kTampered, recall, config.ap_mode);
  }
  return report;
}

EvaluationReport CollectionRetrieval(const Corpus& corpus,
                                     const TamperedTestSet& testset,
                                     const EvaluationConfig& config) {
  config.Validate();
  const Scorer scorer(corpus, config.scoring, config.threads);
  return CollectionRetrieval(scorer, testset, config);
}

}  // namespace xmc
