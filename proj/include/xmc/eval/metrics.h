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

#ifndef XMC_EVAL_METRICS_H_
#define XMC_EVAL_METRICS_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmc/simeng/measures.h"

namespace xmc {

enum class Variant { kClean, kTampered };
std::string_view ToString(Variant v);

struct RankedEntry {
  std::string doc_id;
  Variant variant = Variant::kClean;
  double score = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

enum class RankOrder { kDescending, kAscending };
std::string_view ToString(RankOrder o);

// Entries sorted by score in the given direction. Equal scores are ordered by
// doc_id, then clean before tampered, so the ranking never depends on input
// order.
class RankedCollection {
 public:
  RankedCollection(std::vector<RankedEntry> entries, RankOrder order);

  const std::vector<RankedEntry>& entries() const { return entries_; }
  RankOrder order() const { return order_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t count(Variant v) const;

 private:
  std::vector<RankedEntry> entries_;
  RankOrder order_;
};

struct ScorePair {
  double clean = 0.0;
  double tampered = 0.0;
};

// Fraction of pairs whose clean score is strictly higher. Ties fail. Throws
// EmptyInput.
double VerificationAccuracy(std::span<const ScorePair> pairs);

// Mann-Whitney estimate of the ROC AUC with clean as the positive class:
// the mean over all (clean, tampered) pairs of 1 for clean > tampered, 0.5
// for a tie and 0 otherwise. O((m + n) log n). Throws EmptyInput.
double RocAuc(std::span<const double> clean, std::span<const double> tampered);

enum class ApMode {
  // Precision summed at relevant positions only (standard average precision).
  kStandard,
  // Precision summed at every position up to the cutoff.
  kLiteral,
};

// ceil(recall * relevant), computed with a small guard against products
// such as 0.07 * 100 landing just above an integer.
std::size_t RelevantCutoff(double recall, std::size_t relevant);

// Average precision truncated at recall level `recall`: with
// n = RelevantCutoff(recall, #relevant) and k the rank at which the n-th
// relevant entry appears, (1/n) * sum over relevant ranks i <= k of
// (relevant entries in ranks 1..i) / i. Throws InvalidArgument for recall
// outside (0, 1], InsufficientRelevant when the ranking has no relevant
// entry.
double ApAtRecall(const RankedCollection& ranking, Variant relevant,
                  double recall, ApMode mode = ApMode::kStandard);

struct DocScore {
  std::string doc_id;
  double score = 0.0;
};

// The ceil(fraction * N) highest-scoring documents, ties broken by doc_id.
// Throws InvalidArgument unless fraction is in (0, 1).
std::set<std::string> TopKSubset(std::span<const DocScore> scores,
                                 double fraction);

// Same, over the documents where `measure` is present.
std::set<std::string> TopKSubset(std::span<const ScoredDocument> scored,
                                 Measure measure, double fraction);

}  // namespace xmc

#endif  // XMC_EVAL_METRICS_H_
