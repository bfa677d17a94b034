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

#ifndef XMC_EVAL_RETRIEVAL_H_
#define XMC_EVAL_RETRIEVAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/eval/metrics.h"
#include "xmc/simeng/scorer.h"
#include "xmc/tamper/tamper.h"

namespace xmc {

inline constexpr int kRecallPercents[] = {25, 50, 100};

struct EvaluationConfig {
  ScoringConfig scoring;
  // Restrict to the top fraction of documents by clean score ("top25",
  // "top50"); nullopt evaluates every document.
  std::optional<double> top_fraction;
  // Recall levels in percent; each must be one of 25, 50, 100.
  std::vector<int> recall_percents = {25, 50, 100};
  ApMode ap_mode = ApMode::kStandard;
  // Only documents whose clean image has this scene kind.
  std::optional<SceneKind> scene_kind;
  std::size_t threads = 0;

  void Validate() const;
};

// "all", "top25", "top50". Returns nullopt for anything else; the outer
// optional distinguishes parse failure from "all".
std::optional<std::optional<double>> ParseSubset(std::string_view text);
std::string SubsetName(const std::optional<double>& top_fraction);

struct EvaluationReport {
  std::string corpus_id;
  TamperTarget target = TamperTarget::kPerson;
  std::string strategy;        // machine name
  std::string strategy_label;  // display label
  std::uint64_t seed = 0;
  std::string subset = "all";
  std::optional<SceneKind> scene_kind;
  std::string ap_mode = "standard";
  std::size_t n_documents = 0;
  double va = 0.0;
  double auc = 0.0;
  // Keyed by recall percent; values in [0, 1].
  std::map<int, double> ap_clean;
  std::map<int, double> ap_tampered;

  // Row title in results tables, e.g. "Persons: PsCG".
  std::string TestSetTitle() const;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

// One evaluated document: the measure for its clean and tampered variants.
struct DocPair {
  std::string doc_id;
  double clean = 0.0;
  double tampered = 0.0;
};

// Scores both variants of every test-set document with the measure matching
// the strategy's target and keeps those where both are present (and, when
// requested, whose scene kind matches). Output follows ascending doc_id.
std::vector<DocPair> EvaluationPairs(const Scorer& scorer,
                                     const TamperedTestSet& testset,
                                     std::optional<SceneKind> scene_kind = {});

// Restricts pairs to the top fraction by clean score.
std::vector<DocPair> SelectSubset(const std::vector<DocPair>& pairs,
                                  double top_fraction);

// The 2 * |D| ranking of clean and tampered variants.
RankedCollection RankPairs(const std::vector<DocPair>& pairs, RankOrder order);

// Document verification and collection retrieval for one test set. AP-clean
// uses the descending ranking, AP-tampered the ascending one. Throws
// IntegrityError when the test set belongs to another corpus, EmptyInput
// when no document is applicable.
EvaluationReport CollectionRetrieval(const Corpus& corpus,
                                     const TamperedTestSet& testset,
                                     const EvaluationConfig& config);

// Same, reusing a scorer; the scorer's configuration overrides
// config.scoring.
EvaluationReport CollectionRetrieval(const Scorer& scorer,
                                     const TamperedTestSet& testset,
                                     const EvaluationConfig& config);

}  // namespace xmc

#endif  // XMC_EVAL_RETRIEVAL_H_
