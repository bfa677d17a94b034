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

#include "xmc/simeng/measures.h"

#include <algorithm>

#include "measures_internal.h"
#include "xmc/core/errors.h"
#include "xmc/simeng/similarity.h"

namespace xmc {

std::string_view ToString(Measure m) {
  switch (m) {
    case Measure::kCmps:
      return "cmps";
    case Measure::kCmls:
      return "cmls";
    case Measure::kCmes:
      return "cmes";
    case Measure::kCmcs:
      return "cmcs";
  }
  return "unknown";
}

Measure MeasureFor(EntityType type) {
  return static_cast<Measure>(static_cast<int>(type));
}

std::optional<Measure> ParseMeasure(std::string_view text) {
  for (Measure m : kMeasures) {
    if (ToString(m) == text) return m;
  }
  if (auto type = ParseEntityType(text)) return MeasureFor(*type);
  if (text == "context") return Measure::kCmcs;
  return std::nullopt;
}

std::string_view ToString(Absence a) {
  switch (a) {
    case Absence::kNoMentions:
      return "no mentions";
    case Absence::kNoFaces:
      return "no faces";
    case Absence::kEmptyReferences:
      return "empty references";
    case Absence::kMissingImageFeature:
      return "missing image feature";
    case Absence::kNoContext:
      return "no context";
    case Absence::kMissingSceneProbabilities:
      return "missing scene probabilities";
  }
  return "unknown";
}

std::string_view ToString(SkipReason r) {
  return r == SkipReason::kNoReferences ? "no references"
                                        : "degenerate reference";
}

double EntityImageSimilarity(const Embedding& image,
                             std::span<const ReferenceImage> refs,
                             const Aggregator& agg) {
  if (refs.empty()) throw EmptyReferences("entity has no reference images");
  std::vector<double> sims;
  sims.reserve(refs.size());
  for (const ReferenceImage& r : refs) sims.push_back(Cosine(image, r.embedding));
  return Aggregate(sims, agg);
}

namespace internal {

std::optional<Embedding> BuildPersonReference(const Entity& person,
                                              const ClusteringParams& params) {
  std::vector<Embedding> faces;
  faces.reserve(person.references.size());
  for (const ReferenceImage& r : person.references) faces.push_back(r.embedding);
  return TryPersonReferenceVector(faces, params);
}

PersonResult ScorePersons(const Document& doc, const Corpus& corpus,
                          const PersonScoring& scoring,
                          const PersonReferences& refs) {
  PersonResult result;
  const auto mentions = DistinctMentions(doc, EntityType::kPerson);
  if (mentions.empty()) {
    result.measure = MeasureValue::Absent(Absence::kNoMentions);
    return result;
  }
  const auto& faces = doc.image.faces;
  if (faces.empty()) {
    result.measure = MeasureValue::Absent(Absence::kNoFaces);
    return result;
  }

  PersonBreakdown& bd = result.breakdown;
  bd.matrix.assign(faces.size(), {});
  for (const std::string& id : mentions) {
    const Entity& person = corpus.entity(id);
    if (person.references.empty()) {
      bd.skipped.push_back({id, SkipReason::kNoReferences});
      continue;
    }
    if (scoring.aggregator) {
      for (std::size_t f = 0; f < faces.size(); ++f) {
        bd.matrix[f].push_back(
            EntityImageSimilarity(faces[f], person.references, *scoring.aggregator));
      }
    } else {
      auto it = refs.find(id);
      if (it == refs.end()) {
        throw InvalidArgument("no reference vector prepared for '" + id + "'");
      }
      if (!it->second) {
        bd.skipped.push_back({id, SkipReason::kDegenerateReference});
        continue;
      }
      for (std::size_t f = 0; f < faces.size(); ++f) {
        bd.matrix[f].push_back(Cosine(faces[f], *it->second));
      }
    }
    bd.persons.push_back(id);
  }

  if (bd.persons.empty()) {
    bd.matrix.clear();
    result.measure = MeasureValue::Absent(Absence::kEmptyReferences);
    return result;
  }
  double best = bd.matrix[0][0];
  for (const auto& row : bd.matrix) {
    for (double v : row) best = std::max(best, v);
  }
  result.measure = MeasureValue::Of(best);
  return result;
}

EntityResult ScoreEntities(const Document& doc, const Corpus& corpus,
                           EntityType type, const Aggregator& agg) {
  EntityResult result;
  const auto mentions = DistinctMentions(doc, type);
  if (mentions.empty()) {
    result.measure = MeasureValue::Absent(Absence::kNoMentions);
    return result;
  }
  const std::optional<Embedding>& feature =
      type == EntityType::kLocation ? doc.image.geo : doc.image.scene;
  if (!feature) {
    result.measure = MeasureValue::Absent(Absence::kMissingImageFeature);
    return result;
  }
  EntityBreakdown& bd = result.breakdown;
  for (const std::string& id : mentions) {
    const Entity& e = corpus.entity(id);
    if (e.references.empty()) {
      bd.skipped.push_back({id, SkipReason::kNoReferences});
      continue;
    }
    bd.entities.push_back({id, EntityImageSimilarity(*feature, e.references, agg)});
  }
  if (bd.entities.empty()) {
    result.measure = MeasureValue::Absent(Absence::kEmptyReferences);
    return result;
  }
  double best = bd.entities.front().similarity;
  for (const EntityScore& s : bd.entities) best = std::max(best, s.similarity);
  result.measure = MeasureValue::Of(best);
  return result;
}

std::vector<std::vector<double>> UnitVocabulary(const SceneVocabulary& vocab) {
  std::vector<std::vector<double>> out;
  out.reserve(vocab.size());
  for (const SceneClass& c : vocab.classes) {
    std::vector<double> row(c.embedding.values().begin(), c.embedding.values().end());
    for (double& x : row) x /= c.embedding.norm();
    out.push_back(std::move(row));
  }
  return out;
}

ContextResult ScoreContext(const Document& doc,
                           const std::vector<std::vector<double>>& unit_vocab) {
  ContextResult result;
  if (doc.nouns.empty()) {
    result.measure = MeasureValue::Absent(Absence::kNoContext);
    return result;
  }
  if (!doc.image.scene_probabilities) {
    result.measure = MeasureValue::Absent(Absence::kMissingSceneProbabilities);
    return result;
  }
  const auto& rho = *doc.image.scene_probabilities;
  if (rho.size() != unit_vocab.size()) {
    throw DimMismatch("scene probabilities do not match the vocabulary");
  }
  // sum_s rho(s) cos(s, c) = (sum_s rho(s) s/|s|) . c / |c|, so the
  // probability-weighted unit scene vector is formed once per image.
  const std::size_t dim = doc.nouns.front().embedding.dim();
  std::vector<double> weighted(dim, 0.0);
  for (std::size_t s = 0; s < rho.size(); ++s) {
    if (rho[s] == 0.0) continue;
    if (unit_vocab[s].size() != dim) {
      throw DimMismatch("noun and scene-class embeddings differ in dim");
    }
    for (std::size_t d = 0; d < dim; ++d) weighted[d] += rho[s] * unit_vocab[s][d];
  }
  ContextBreakdown& bd = result.breakdown;
  bd.nouns.reserve(doc.nouns.size());
  double best = -1.0;
  for (const NounContext& n : doc.nouns) {
    if (n.embedding.dim() != dim) throw DimMismatch("noun embeddings differ in dim");
    const double v =
        std::clamp(Dot(weighted, n.embedding.values()) / n.embedding.norm(), -1.0, 1.0);
    bd.nouns.push_back({n.noun, v});
    best = std::max(best, v);
  }
  result.measure = MeasureValue::Of(best);
  return result;
}

}  // namespace internal

PersonResult Cmps(const Document& doc, const Corpus& corpus,
                  const PersonScoring& scoring) {
  scoring.clustering.Validate();
  internal::PersonReferences refs;
  if (!scoring.aggregator) {
    for (const std::string& id : DistinctMentions(doc, EntityType::kPerson)) {
      const Entity& person = corpus.entity(id);
      if (!person.references.empty()) {
        refs.emplace(id, internal::BuildPersonReference(person, scoring.clustering));
      }
    }
  }
  return internal::ScorePersons(doc, corpus, scoring, refs);
}

EntityResult Cmls(const Document& doc, const Corpus& corpus,
                  const Aggregator& agg) {
  return internal::ScoreEntities(doc, corpus, EntityType::kLocation, agg);
}

EntityResult Cmes(const Document& doc, const Corpus& corpus,
                  const Aggregator& agg) {
  return internal::ScoreEntities(doc, corpus, EntityType::kEvent, agg);
}

ContextResult Cmcs(const Document& doc, const SceneVocabulary& vocab) {
  return internal::ScoreContext(doc, internal::UnitVocabulary(vocab));
}

ScoredDocument ScoreDocument(const Document& doc, const Corpus& corpus,
                             const ScoringConfig& config) {
  ScoredDocument out;
  out.doc_id = doc.id;
  PersonResult p = Cmps(doc, corpus, config.persons);
  EntityResult l = Cmls(doc, corpus, config.locations);
  EntityResult e = Cmes(doc, corpus, config.events);
  ContextResult c = Cmcs(doc, corpus.vocabulary());
  out.measures = {p.measure, l.measure, e.measure, c.measure};
  out.persons = std::move(p.breakdown);
  out.locations = std::move(l.breakdown);
  out.events = std::move(e.breakdown);
  out.context = std::move(c.breakdown);
  return out;
}

}  // namespace xmc
