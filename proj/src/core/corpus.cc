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

#include "xmc/core/corpus.h"

#include <cmath>
#include <unordered_set>

#include "xmc/core/errors.h"

namespace xmc {

std::string_view ToString(EntityType type) {
  switch (type) {
    case EntityType::kPerson:
      return "person";
    case EntityType::kLocation:
      return "location";
    case EntityType::kEvent:
      return "event";
  }
  return "unknown";
}

std::optional<EntityType> ParseEntityType(std::string_view text) {
  if (text == "person" || text == "persons") return EntityType::kPerson;
  if (text == "location" || text == "locations") return EntityType::kLocation;
  if (text == "event" || text == "events") return EntityType::kEvent;
  return std::nullopt;
}

bool Coordinates::IsValid() const {
  return std::isfinite(latitude) && std::isfinite(longitude) &&
         latitude >= -90.0 && latitude <= 90.0 && longitude > -180.0 &&
         longitude <= 180.0;
}

std::string_view ToString(SceneKind kind) {
  return kind == SceneKind::kIndoor ? "indoor" : "outdoor";
}

std::optional<SceneKind> ParseSceneKind(std::string_view text) {
  if (text == "indoor") return SceneKind::kIndoor;
  if (text == "outdoor") return SceneKind::kOutdoor;
  return std::nullopt;
}

std::string_view ToString(EmbeddingRole role) {
  switch (role) {
    case EmbeddingRole::kFace:
      return "face";
    case EmbeddingRole::kGeo:
      return "geo";
    case EmbeddingRole::kScene:
      return "scene";
    case EmbeddingRole::kWord:
      return "word";
    case EmbeddingRole::kImageSimilarity:
      return "image_similarity";
  }
  return "unknown";
}

std::optional<EmbeddingRole> ParseEmbeddingRole(std::string_view text) {
  for (auto role : {EmbeddingRole::kFace, EmbeddingRole::kGeo,
                    EmbeddingRole::kScene, EmbeddingRole::kWord,
                    EmbeddingRole::kImageSimilarity}) {
    if (ToString(role) == text) return role;
  }
  return std::nullopt;
}

EmbeddingRole ReferenceRole(EntityType type) {
  switch (type) {
    case EntityType::kPerson:
      return EmbeddingRole::kFace;
    case EntityType::kLocation:
      return EmbeddingRole::kGeo;
    case EntityType::kEvent:
      return EmbeddingRole::kScene;
  }
  return EmbeddingRole::kFace;
}

std::vector<std::string> DistinctMentions(const Document& doc,
                                          EntityType type) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const std::string& id : doc.mentions_of(type)) {
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

Corpus::Corpus(std::string id, std::vector<Entity> entities,
               std::vector<Document> documents, SceneVocabulary vocabulary,
               CorpusOptions options)
    : id_(std::move(id)),
      entities_(std::move(entities)),
      documents_(std::move(documents)),
      vocabulary_(std::move(vocabulary)),
      options_(options) {
  Validate();
}

void Corpus::CheckDim(EmbeddingRole role, std::size_t dim,
                      std::string_view where) {
  auto [it, inserted] = dims_.emplace(role, dim);
  if (!inserted && it->second != dim) {
    throw IntegrityError(std::string(where) + ": " +
                         std::string(ToString(role)) + " embedding has dim " +
                         std::to_string(dim) + ", corpus uses " +
                         std::to_string(it->second));
  }
}

void Corpus::Validate() {
  if (options_.per_source_cap == 0) {
    throw IntegrityError("per-source reference cap must be positive");
  }

  std::unordered_set<std::string> class_ids;
  for (const SceneClass& c : vocabulary_.classes) {
    if (!class_ids.insert(c.id).second) {
      throw IntegrityError("duplicate scene class id '" + c.id + "'");
    }
    CheckDim(EmbeddingRole::kWord, c.embedding.dim(), "scene class " + c.id);
  }

  for (std::size_t i = 0; i < entities_.size(); ++i) {
    const Entity& e = entities_[i];
    const std::string where = "entity '" + e.id + "'";
    if (e.id.empty()) throw IntegrityError("entity with empty id");
    if (!entity_index_.emplace(e.id, i).second) {
      throw IntegrityError("duplicate entity id '" + e.id + "'");
    }
    if (const LocationAttrs* loc = e.location();
        loc && !loc->coordinates.IsValid()) {
      throw IntegrityError(where + " has invalid coordinates");
    }
    std::map<std::string, std::size_t> per_source;
    for (const ReferenceImage& ref : e.references) {
      if (++per_source[ref.source] > options_.per_source_cap) {
        throw IntegrityError(where + " exceeds " +
                             std::to_string(options_.per_source_cap) +
                             " references from source '" + ref.source + "'");
      }
      CheckDim(ReferenceRole(e.type()), ref.embedding.dim(), where);
    }
    by_type_[static_cast<std::size_t>(e.type())].push_back(e.id);
  }

  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const Document& d = documents_[i];
    const std::string where = "document '" + d.id + "'";
    if (d.id.empty()) throw IntegrityError("document with empty id");
    if (!document_index_.emplace(d.id, i).second) {
      throw IntegrityError("duplicate document id '" + d.id + "'");
    }
    for (EntityType type : kEntityTypes) {
      for (const std::string& mention : d.mentions_of(type)) {
        const Entity* e = FindEntity(mention);
        if (e == nullptr) {
          throw IntegrityError(where + " mentions unknown entity '" + mention +
                               "'");
        }
        if (e->type() != type) {
          throw IntegrityError(where + " lists '" + mention + "' as a " +
                               std::string(ToString(type)) + " but it is a " +
                               std::string(ToString(e->type())));
        }
      }
    }
    for (const NounContext& n : d.nouns) {
      CheckDim(EmbeddingRole::kWord, n.embedding.dim(), where);
    }
    const ImageFeatures& img = d.image;
    for (const Embedding& f : img.faces) {
      CheckDim(EmbeddingRole::kFace, f.dim(), where);
    }
    if (img.geo) CheckDim(EmbeddingRole::kGeo, img.geo->dim(), where);
    if (img.scene) CheckDim(EmbeddingRole::kScene, img.scene->dim(), where);
    if (img.similarity) {
      CheckDim(EmbeddingRole::kImageSimilarity, img.similarity->dim(), where);
    }
    if (img.scene_probabilities) {
      const auto& p = *img.scene_probabilities;
      if (p.size() != vocabulary_.size()) {
        throw IntegrityError(where + " has " + std::to_string(p.size()) +
                             " scene probabilities for a vocabulary of " +
                             std::to_string(vocabulary_.size()));
      }
      double sum = 0.0;
      for (double x : p) {
        if (!std::isfinite(x) || x < 0.0) {
          throw IntegrityError(where + " has a negative or non-finite scene "
                                       "probability");
        }
        sum += x;
      }
      if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        throw IntegrityError(where + " scene probabilities sum to " +
                             std::to_string(sum));
      }
    }
  }
}

const Entity* Corpus::FindEntity(std::string_view id) const {
  auto it = entity_index_.find(std::string(id));
  return it == entity_index_.end() ? nullptr : &entities_[it->second];
}

const Document* Corpus::FindDocument(std::string_view id) const {
  auto it = document_index_.find(std::string(id));
  return it == document_index_.end() ? nullptr : &documents_[it->second];
}

const Entity& Corpus::entity(std::string_view id) const {
  const Entity* e = FindEntity(id);
  if (e == nullptr) throw IntegrityError("unknown entity '" + std::string(id) + "'");
  return *e;
}

const Document& Corpus::document(std::string_view id) const {
  const Document* d = FindDocument(id);
  if (d == nullptr) {
    throw IntegrityError("unknown document '" + std::string(id) + "'");
  }
  return *d;
}

Corpus FilterByMentionFrequency(const Corpus& corpus,
                                const MentionFrequencyFilter& filter) {
  std::unordered_map<std::string, std::size_t> doc_counts;
  for (const Document& d : corpus.documents()) {
    for (EntityType type : kEntityTypes) {
      for (const std::string& id : DistinctMentions(d, type)) ++doc_counts[id];
    }
  }
  auto keep = [&](const Entity& e) {
    const std::size_t min = filter.min_documents[static_cast<std::size_t>(e.type())];
    auto it = doc_counts.find(e.id);
    const std::size_t n = it == doc_counts.end() ? 0 : it->second;
    return n >= min;
  };

  std::vector<Entity> entities;
  std::unordered_set<std::string> kept;
  for (const Entity& e : corpus.entities()) {
    if (keep(e)) {
      entities.push_back(e);
      kept.insert(e.id);
    }
  }
  std::vector<Document> documents = corpus.documents();
  for (Document& d : documents) {
    for (auto& list : d.mentions) {
      std::erase_if(list, [&](const std::string& id) { return !kept.contains(id); });
    }
  }
  return Corpus(corpus.id(), std::move(entities), std::move(documents),
                corpus.vocabulary(), corpus.options());
}

}  // namespace xmc
