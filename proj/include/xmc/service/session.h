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

#ifndef XMC_SERVICE_SESSION_H_
#define XMC_SERVICE_SESSION_H_

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/eval/retrieval.h"
#include "xmc/service/config.h"
#include "xmc/simeng/scorer.h"
#include "xmc/tamper/tamper.h"

namespace xmc {

// Shared state behind the HTTP API: the loaded corpus, named test sets and
// score caches. Every method is safe to call from several threads.
//
// Document scores are cached per (document, measure, measure fingerprint),
// so re-scoring under a changed configuration recomputes only the measures
// whose settings changed.
class ApiSession {
 public:
  explicit ApiSession(EngineConfig config = {}, std::size_t threads = 0);

  // Replaces the corpus and drops every cache and test set.
  void LoadCorpus(std::shared_ptr<const Corpus> corpus);
  // Null until a corpus is loaded.
  std::shared_ptr<const Corpus> corpus() const;
  const EngineConfig& config() const { return config_; }
  std::size_t threads() const { return threads_; }

  // Throws IntegrityError when the test set belongs to another corpus or no
  // corpus is loaded.
  void AddTestSet(const std::string& name, TamperedTestSet testset);
  std::shared_ptr<const TamperedTestSet> FindTestSet(const std::string& name) const;
  std::vector<std::string> TestSetNames() const;

  // Scores a corpus document. Throws IntegrityError for an unknown id.
  ScoredDocument Score(const std::string& doc_id, const ScoringConfig& scoring);
  // Scores an arbitrary document against the corpus tables; never cached.
  ScoredDocument ScoreUncached(const Document& doc, const ScoringConfig& scoring) const;

  // A batch scorer for `scoring`; built once per configuration.
  std::shared_ptr<const Scorer> ScorerFor(const ScoringConfig& scoring);

  // Clean/tampered measure pairs of a named test set, cached per
  // configuration.
  std::shared_ptr<const std::vector<DocPair>> Pairs(const std::string& testset,
                                                    const ScoringConfig& scoring);

  // Number of single-measure computations done by Score so far.
  std::size_t measure_computations() const { return computations_.load(); }

 private:
  using Breakdown = std::variant<PersonBreakdown, EntityBreakdown, ContextBreakdown>;
  struct CachedMeasure {
    MeasureValue value;
    Breakdown breakdown;
  };

  CachedMeasure Compute(const Corpus& corpus, const Document& doc,
                        const ScoringConfig& scoring, Measure m) const;

  EngineConfig config_;
  std::size_t threads_;

  mutable std::shared_mutex mu_;
  std::shared_ptr<const Corpus> corpus_;
  std::map<std::string, std::shared_ptr<const TamperedTestSet>> testsets_;
  std::map<std::string, CachedMeasure> measures_;
  std::map<std::string, std::shared_ptr<const Scorer>> scorers_;
  std::map<std::string, std::shared_ptr<const std::vector<DocPair>>> pairs_;
  std::atomic<std::size_t> computations_{0};
};

}  // namespace xmc

#endif  // XMC_SERVICE_SESSION_H_
