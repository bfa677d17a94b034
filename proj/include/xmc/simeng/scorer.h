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

#ifndef XMC_SIMENG_SCORER_H_
#define XMC_SIMENG_SCORER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/simeng/measures.h"

namespace xmc {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). fn must only write to state owned by index i.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

// Batch scorer bound to one corpus and configuration. Person reference
// vectors and the unit scene vocabulary are computed once at construction;
// afterwards the scorer is immutable and safe to share across threads.
// Results are identical to ScoreDocument().
//
// The corpus must outlive the scorer.
class Scorer {
 public:
  Scorer(const Corpus& corpus, ScoringConfig config, std::size_t threads = 0);

  const Corpus& corpus() const { return *corpus_; }
  const ScoringConfig& config() const { return config_; }
  std::size_t threads() const { return threads_; }

  ScoredDocument Score(const Document& doc) const;
  MeasureValue ScoreMeasure(const Document& doc, Measure m) const;

  PersonResult Persons(const Document& doc) const;
  EntityResult Locations(const Document& doc) const;
  EntityResult Events(const Document& doc) const;
  ContextResult Context(const Document& doc) const;

  // Scores every document; output order follows input order.
  std::vector<ScoredDocument> ScoreAll(std::span<const Document> docs) const;
  std::vector<MeasureValue> ScoreAll(std::span<const Document> docs,
                                     Measure m) const;

 private:
  const Corpus* corpus_;
  ScoringConfig config_;
  std::size_t threads_;
  std::unordered_map<std::string, std::optional<Embedding>> person_refs_;
  std::vector<std::vector<double>> unit_vocab_;
};

}  // namespace xmc

#endif  // XMC_SIMENG_SCORER_H_
