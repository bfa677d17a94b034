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

#ifndef XMC_TAMPER_TAMPER_H_
#define XMC_TAMPER_TAMPER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/tamper/rng.h"
#include "xmc/tamper/strategy.h"

namespace xmc {

// A substitution drawn by the fallback rule because no candidate met every
// constraint.
struct FallbackRecord {
  std::string doc_id;
  std::string original;
  std::string replacement;
  std::size_t satisfied = 0;    // constraints met by the replacement
  std::size_t constraints = 0;  // constraints of the strategy

  friend bool operator==(const FallbackRecord&, const FallbackRecord&) = default;
};

struct DroppedDocument {
  std::string doc_id;
  std::string reason;

  friend bool operator==(const DroppedDocument&, const DroppedDocument&) = default;
};

// The tampered counterpart of every applicable document for one strategy.
// Entity strategies fill entity_substitutions (original id -> replacement id
// per document); context strategies fill image_substitutions (document ->
// donor document whose image replaces its own).
struct TamperedTestSet {
  std::string corpus_id;
  TamperStrategy strategy;
  std::uint64_t seed = 0;
  std::string rng_algorithm{kRngAlgorithm};
  std::map<std::string, std::map<std::string, std::string>> entity_substitutions;
  std::map<std::string, std::string> image_substitutions;
  std::vector<FallbackRecord> fallback_log;
  std::vector<DroppedDocument> dropped;

  TamperTarget target() const { return TargetOf(strategy); }
  // Tampered documents in ascending id order.
  std::vector<std::string> doc_ids() const;
  bool contains(const std::string& doc_id) const;
};

// Every entity of the original's type, other than the original, that meets
// all constraints of `strategy`, in entity table order.
std::vector<std::string> CandidatePool(const Entity& original,
                                       const Corpus& corpus,
                                       const TamperStrategy& strategy);

struct Selection {
  std::string entity_id;
  bool used_fallback = false;
  std::size_t satisfied = 0;
};

// Uniform draw from the candidate pool (minus `exclude`). When it is empty,
// every remaining same-type entity is scored by the number of constraints it
// meets and the draw is uniform over the best-scoring ones. Throws
// NoCandidates when no other entity of the type remains.
Selection SelectReplacement(const Entity& original, const Corpus& corpus,
                            const TamperStrategy& strategy, Rng& rng,
                            const std::set<std::string>& exclude = {});

// Replaces every mentioned entity of the strategy's type in every document
// that mentions one. Within a document each distinct entity gets one
// replacement, and replacements avoid the document's other mentions and each
// other. Documents left without a candidate are dropped and logged.
TamperedTestSet TamperEntities(const Corpus& corpus,
                               const TamperStrategy& strategy,
                               std::uint64_t seed);

// Swaps each document's image for another document's image: uniformly at
// random, or from the top ceil(f * (|D| - 1)) documents most similar by the
// image-similarity embedding. Throws MissingSimilarityEmbedding, NoCandidates
// when |D| < 2.
TamperedTestSet TamperContext(const Corpus& corpus,
                              const TamperStrategy& strategy,
                              std::uint64_t seed);

// Dispatches on the strategy's target.
TamperedTestSet Tamper(const Corpus& corpus, const TamperStrategy& strategy,
                       std::uint64_t seed);

// The tampered variant of `clean`, which must be part of the test set.
Document ApplyTampering(const Corpus& corpus, const TamperedTestSet& testset,
                        const Document& clean);

// Test-set files: a single JSON document. Serialization is canonical (sorted
// keys), so identical test sets produce identical bytes.
std::string TestSetToJson(const TamperedTestSet& testset);
TamperedTestSet TestSetFromJson(const std::string& text);
void WriteTestSet(const TamperedTestSet& testset,
                  const std::filesystem::path& path);
TamperedTestSet ReadTestSet(const std::filesystem::path& path);

}  // namespace xmc

#endif  // XMC_TAMPER_TAMPER_H_
