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

#ifndef XMC_SIMENG_MEASURES_H_
#define XMC_SIMENG_MEASURES_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/simeng/aggregate.h"
#include "xmc/simeng/clustering.h"

namespace xmc {

// The four document-level cross-modal measures. They are reported side by
// side and never combined.
enum class Measure { kCmps = 0, kCmls = 1, kCmes = 2, kCmcs = 3 };
inline constexpr std::array<Measure, 4> kMeasures = {
    Measure::kCmps, Measure::kCmls, Measure::kCmes, Measure::kCmcs};

std::string_view ToString(Measure m);
Measure MeasureFor(EntityType type);
// Accepts measure names ("cmps") and the entity/context names ("person",
// "location", "event", "context").
std::optional<Measure> ParseMeasure(std::string_view text);

// Why a measure is absent for a document.
enum class Absence {
  kNoMentions,
  kNoFaces,
  kEmptyReferences,
  kMissingImageFeature,
  kNoContext,
  kMissingSceneProbabilities,
};
std::string_view ToString(Absence a);

struct MeasureValue {
  std::optional<double> value;
  std::optional<Absence> absence;

  static MeasureValue Of(double v) { return {v, std::nullopt}; }
  static MeasureValue Absent(Absence a) { return {std::nullopt, a}; }
  bool present() const { return value.has_value(); }

  friend bool operator==(const MeasureValue&, const MeasureValue&) = default;
};

enum class SkipReason { kNoReferences, kDegenerateReference };
std::string_view ToString(SkipReason r);

// A mentioned entity that contributed no similarity.
struct SkippedEntity {
  std::string entity_id;
  SkipReason reason;

  friend bool operator==(const SkippedEntity&, const SkippedEntity&) = default;
};

struct PersonBreakdown {
  std::vector<std::string> persons;  // matrix columns
  // matrix[face][person]
  std::vector<std::vector<double>> matrix;
  std::vector<SkippedEntity> skipped;

  friend bool operator==(const PersonBreakdown&, const PersonBreakdown&) = default;
};

struct EntityScore {
  std::string entity_id;
  double similarity = 0.0;

  friend bool operator==(const EntityScore&, const EntityScore&) = default;
};

struct EntityBreakdown {
  std::vector<EntityScore> entities;
  std::vector<SkippedEntity> skipped;

  friend bool operator==(const EntityBreakdown&, const EntityBreakdown&) = default;
};

struct NounScore {
  std::string noun;
  double similarity = 0.0;

  friend bool operator==(const NounScore&, const NounScore&) = default;
};

struct ContextBreakdown {
  std::vector<NounScore> nouns;

  friend bool operator==(const ContextBreakdown&, const ContextBreakdown&) = default;
};

struct PersonResult {
  MeasureValue measure;
  PersonBreakdown breakdown;
};

struct EntityResult {
  MeasureValue measure;
  EntityBreakdown breakdown;
};

struct ContextResult {
  MeasureValue measure;
  ContextBreakdown breakdown;
};

struct ScoredDocument {
  std::string doc_id;
  std::array<MeasureValue, 4> measures;
  PersonBreakdown persons;
  EntityBreakdown locations;
  EntityBreakdown events;
  ContextBreakdown context;

  const MeasureValue& measure(Measure m) const {
    return measures[static_cast<std::size_t>(m)];
  }

  friend bool operator==(const ScoredDocument&, const ScoredDocument&) = default;
};

// How person references are formed. Without an aggregator each gallery is
// clustered and its majority-cluster mean is the reference vector; with one,
// every gallery face is compared and the similarities are aggregated.
struct PersonScoring {
  std::optional<Aggregator> aggregator;
  ClusteringParams clustering;

  friend bool operator==(const PersonScoring&, const PersonScoring&) = default;
};

struct ScoringConfig {
  PersonScoring persons;
  Aggregator locations = Aggregator::Max();
  Aggregator events = Aggregator::Max();

  void Validate() const { persons.clustering.Validate(); }
  friend bool operator==(const ScoringConfig&, const ScoringConfig&) = default;
};

// Aggregate of the cosines between `image` and every reference. Throws
// EmptyReferences or DimMismatch.
double EntityImageSimilarity(const Embedding& image,
                             std::span<const ReferenceImage> refs,
                             const Aggregator& agg);

// Cross-modal person similarity: the maximum cosine over every (face,
// mentioned person) pair. Mentions must resolve in `corpus`.
PersonResult Cmps(const Document& doc, const Corpus& corpus,
                  const PersonScoring& scoring);

// Cross-modal location similarity against the image's geolocation feature.
EntityResult Cmls(const Document& doc, const Corpus& corpus,
                  const Aggregator& agg = Aggregator::Max());

// Cross-modal event similarity against the image's scene feature.
EntityResult Cmes(const Document& doc, const Corpus& corpus,
                  const Aggregator& agg = Aggregator::Max());

// Cross-modal context similarity: for each noun, the scene-probability
// weighted sum of its cosines to every scene class; the maximum over nouns.
ContextResult Cmcs(const Document& doc, const SceneVocabulary& vocab);

// All four measures with their breakdowns. Deterministic.
ScoredDocument ScoreDocument(const Document& doc, const Corpus& corpus,
                             const ScoringConfig& config);

}  // namespace xmc

#endif  // XMC_SIMENG_MEASURES_H_
