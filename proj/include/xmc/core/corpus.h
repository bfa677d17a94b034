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

#ifndef XMC_CORE_CORPUS_H_
#define XMC_CORE_CORPUS_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "xmc/core/embedding.h"

namespace xmc {

enum class EntityType { kPerson = 0, kLocation = 1, kEvent = 2 };
inline constexpr std::array<EntityType, 3> kEntityTypes = {
    EntityType::kPerson, EntityType::kLocation, EntityType::kEvent};

std::string_view ToString(EntityType type);
// Accepts "person"/"persons", "location"/"locations", "event"/"events".
std::optional<EntityType> ParseEntityType(std::string_view text);

// Degrees. Valid when latitude is in [-90, 90] and longitude in (-180, 180].
struct Coordinates {
  double latitude = 0.0;
  double longitude = 0.0;

  bool IsValid() const;
  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

struct PersonAttrs {
  std::string gender;
  std::set<std::string> citizenship;

  friend bool operator==(const PersonAttrs&, const PersonAttrs&) = default;
};

struct LocationAttrs {
  Coordinates coordinates;
  std::set<std::string> parent_classes;

  friend bool operator==(const LocationAttrs&, const LocationAttrs&) = default;
};

struct EventAttrs {
  std::set<std::string> parent_classes;

  friend bool operator==(const EventAttrs&, const EventAttrs&) = default;
};

struct ReferenceImage {
  std::string source;
  Embedding embedding;

  friend bool operator==(const ReferenceImage&, const ReferenceImage&) = default;
};

struct Entity {
  std::string id;
  std::string label;
  std::variant<PersonAttrs, LocationAttrs, EventAttrs> attrs;
  // Reference gallery. Persons carry face embeddings, locations geolocation
  // embeddings, events scene embeddings.
  std::vector<ReferenceImage> references;

  EntityType type() const { return static_cast<EntityType>(attrs.index()); }
  const PersonAttrs* person() const { return std::get_if<PersonAttrs>(&attrs); }
  const LocationAttrs* location() const {
    return std::get_if<LocationAttrs>(&attrs);
  }
  const EventAttrs* event() const { return std::get_if<EventAttrs>(&attrs); }

  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class SceneKind { kIndoor, kOutdoor };
std::string_view ToString(SceneKind kind);
std::optional<SceneKind> ParseSceneKind(std::string_view text);

struct NounContext {
  std::string noun;
  Embedding embedding;

  friend bool operator==(const NounContext&, const NounContext&) = default;
};

// Everything derived from the news photo. Context tampering swaps this block
// wholesale between documents.
struct ImageFeatures {
  std::vector<Embedding> faces;
  std::optional<Embedding> geo;
  std::optional<Embedding> scene;
  std::optional<std::vector<double>> scene_probabilities;
  std::optional<Embedding> similarity;
  std::optional<SceneKind> scene_kind;

  friend bool operator==(const ImageFeatures&, const ImageFeatures&) = default;
};

struct Document {
  std::string id;
  std::array<std::vector<std::string>, 3> mentions;
  std::vector<NounContext> nouns;
  ImageFeatures image;

  std::vector<std::string>& mentions_of(EntityType t) {
    return mentions[static_cast<std::size_t>(t)];
  }
  const std::vector<std::string>& mentions_of(EntityType t) const {
    return mentions[static_cast<std::size_t>(t)];
  }

  friend bool operator==(const Document&, const Document&) = default;
};

// Mentions of one type in first-occurrence order, duplicates removed.
std::vector<std::string> DistinctMentions(const Document& doc, EntityType type);

struct SceneClass {
  std::string id;
  std::string label;
  Embedding embedding;

  friend bool operator==(const SceneClass&, const SceneClass&) = default;
};

struct SceneVocabulary {
  std::vector<SceneClass> classes;

  std::size_t size() const { return classes.size(); }
  friend bool operator==(const SceneVocabulary&, const SceneVocabulary&) =
      default;
};

// Embedding families. Vectors compared with each other share a role and
// therefore a dimension.
enum class EmbeddingRole { kFace, kGeo, kScene, kWord, kImageSimilarity };
std::string_view ToString(EmbeddingRole role);
std::optional<EmbeddingRole> ParseEmbeddingRole(std::string_view text);
EmbeddingRole ReferenceRole(EntityType type);

inline constexpr std::size_t kDefaultPerSourceCap = 10;
inline constexpr double kProbabilitySumTolerance = 1e-6;

struct CorpusOptions {
  std::size_t per_source_cap = kDefaultPerSourceCap;
};

// A validated, immutable collection of entities and documents. The
// constructor checks every data-model invariant and throws IntegrityError on
// the first violation, so a Corpus value is always well-formed.
class Corpus {
 public:
  Corpus(std::string id, std::vector<Entity> entities,
         std::vector<Document> documents, SceneVocabulary vocabulary,
         CorpusOptions options = {});

  const std::string& id() const { return id_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<Document>& documents() const { return documents_; }
  const SceneVocabulary& vocabulary() const { return vocabulary_; }
  const CorpusOptions& options() const { return options_; }
  const std::map<EmbeddingRole, std::size_t>& embedding_dims() const {
    return dims_;
  }

  const Entity* FindEntity(std::string_view id) const;
  const Document* FindDocument(std::string_view id) const;
  // Throws IntegrityError for an unknown id.
  const Entity& entity(std::string_view id) const;
  const Document& document(std::string_view id) const;

  // Ids of every entity of `type`, in table order.
  const std::vector<std::string>& entity_ids(EntityType type) const {
    return by_type_[static_cast<std::size_t>(type)];
  }

 private:
  void Validate();
  void CheckDim(EmbeddingRole role, std::size_t dim, std::string_view where);

  std::string id_;
  std::vector<Entity> entities_;
  std::vector<Document> documents_;
  SceneVocabulary vocabulary_;
  CorpusOptions options_;
  std::map<EmbeddingRole, std::size_t> dims_;
  std::unordered_map<std::string, std::size_t> entity_index_;
  std::unordered_map<std::string, std::size_t> document_index_;
  std::array<std::vector<std::string>, 3> by_type_;
};

// Minimum number of distinct documents an entity must be mentioned in to be
// kept. Zero disables the filter for that type.
struct MentionFrequencyFilter {
  std::array<std::size_t, 3> min_documents = {0, 0, 0};
};

// Drops rarely mentioned entities together with their mentions.
Corpus FilterByMentionFrequency(const Corpus& corpus,
                                const MentionFrequencyFilter& filter);

}  // namespace xmc

#endif  // XMC_CORE_CORPUS_H_
