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

#include "xmc/core/manifest.h"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "xmc/core/blob.h"
#include "xmc/core/errors.h"

namespace xmc {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class BlobCache {
 public:
  explicit BlobCache(fs::path dir) : dir_(std::move(dir)) {}

  std::span<const float> Row(const BlobRef& ref) {
    if (ref.blob.empty() || fs::path(ref.blob).is_absolute() ||
        ref.blob.find("..") != std::string::npos) {
      throw MalformedManifest("blob name '" + ref.blob + "' must be a relative path");
    }
    auto it = blobs_.find(ref.blob);
    if (it == blobs_.end()) {
      it = blobs_.emplace(ref.blob, ReadBlob(dir_ / ref.blob)).first;
    }
    if (ref.row >= it->second.count()) {
      throw BlobError("row " + std::to_string(ref.row) + " out of range for " +
                      ref.blob + " (" + std::to_string(it->second.count()) +
                      " rows)");
    }
    return it->second.row(ref.row);
  }

 private:
  fs::path dir_;
  std::map<std::string, BlobContents> blobs_;
};

// Schema accessors. Every structural problem surfaces as MalformedManifest
// with the JSON path of the offending value.
const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw MalformedManifest(where + " is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw MalformedManifest(where + " is missing '" + key + "'");
  }
  return *it;
}

std::string String(const json& v, const std::string& where) {
  if (!v.is_string()) throw MalformedManifest(where + " must be a string");
  return v.get<std::string>();
}

double Number(const json& v, const std::string& where) {
  if (!v.is_number()) throw MalformedManifest(where + " must be a number");
  return v.get<double>();
}

const json& Array(const json& v, const std::string& where) {
  if (!v.is_array()) throw MalformedManifest(where + " must be an array");
  return v;
}

const json* Optional(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::set<std::string> StringSet(const json* v, const std::string& where) {
  std::set<std::string> out;
  if (v == nullptr) return out;
  for (std::size_t i = 0; i < Array(*v, where).size(); ++i) {
    out.insert(String((*v)[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> StringList(const json* v, const std::string& where) {
  std::vector<std::string> out;
  if (v == nullptr) return out;
  for (std::size_t i = 0; i < Array(*v, where).size(); ++i) {
    out.push_back(String((*v)[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

BlobRef ParseRef(const json& v, const std::string& where) {
  BlobRef ref;
  ref.blob = String(Field(v, "blob", where), where + ".blob");
  const json& row = Field(v, "row", where);
  if (!row.is_number_unsigned() && !(row.is_number_integer() && row.get<long long>() >= 0)) {
    throw MalformedManifest(where + ".row must be a non-negative integer");
  }
  ref.row = row.get<std::uint64_t>();
  return ref;
}

class Reader {
 public:
  explicit Reader(fs::path dir) : blobs_(std::move(dir)) {}

  Embedding ReadEmbedding(const json& v, const std::string& where) {
    const BlobRef ref = ParseRef(v, where);
    auto row = blobs_.Row(ref);
    try {
      return Embedding(std::vector<double>(row.begin(), row.end()));
    } catch (const InvalidEmbedding& e) {
      throw IntegrityError(where + " (" + ref.blob + "#" +
                           std::to_string(ref.row) + "): " + e.what());
    }
  }

  std::vector<double> ReadProbabilities(const json& v,
                                        const std::string& where) {
    if (v.is_array()) {
      std::vector<double> out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(Number(v[i], where + "[" + std::to_string(i) + "]"));
      }
      return out;
    }
    auto row = blobs_.Row(ParseRef(v, where));
    return std::vector<double>(row.begin(), row.end());
  }

  std::vector<ReferenceImage> ReadReferences(const json* v,
                                             const std::string& where) {
    std::vector<ReferenceImage> out;
    if (v == nullptr) return out;
    for (std::size_t i = 0; i < Array(*v, where).size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      const json& item = (*v)[i];
      out.push_back({String(Field(item, "source", at), at + ".source"),
                     ReadEmbedding(Field(item, "embedding", at), at + ".embedding")});
    }
    return out;
  }

  Entity ReadEntity(const json& v, const std::string& where) {
    Entity e;
    e.id = String(Field(v, "id", where), where + ".id");
    const std::string at = where + "(" + e.id + ")";
    const std::string type = String(Field(v, "type", at), at + ".type");
    if (const json* label = Optional(v, "label")) e.label = String(*label, at + ".label");
    auto parsed = ParseEntityType(type);
    if (!parsed) throw MalformedManifest(at + " has unknown type '" + type + "'");
    switch (*parsed) {
      case EntityType::kPerson: {
        PersonAttrs p;
        if (const json* g = Optional(v, "gender")) p.gender = String(*g, at + ".gender");
        p.citizenship = StringSet(Optional(v, "citizenship"), at + ".citizenship");
        e.attrs = std::move(p);
        break;
      }
      case EntityType::kLocation: {
        LocationAttrs l;
        l.coordinates.latitude = Number(Field(v, "latitude", at), at + ".latitude");
        l.coordinates.longitude = Number(Field(v, "longitude", at), at + ".longitude");
        l.parent_classes = StringSet(Optional(v, "parent_classes"), at + ".parent_classes");
        e.attrs = std::move(l);
        break;
      }
      case EntityType::kEvent: {
        EventAttrs ev;
        ev.parent_classes = StringSet(Optional(v, "parent_classes"), at + ".parent_classes");
        e.attrs = std::move(ev);
        break;
      }
    }
    e.references = ReadReferences(Optional(v, "references"), at + ".references");
    return e;
  }

  Document ReadDocument(const json& v, const std::string& where) {
    Document d;
    d.id = String(Field(v, "id", where), where + ".id");
    const std::string at = where + "(" + d.id + ")";
    d.mentions_of(EntityType::kPerson) = StringList(Optional(v, "persons"), at + ".persons");
    d.mentions_of(EntityType::kLocation) = StringList(Optional(v, "locations"), at + ".locations");
    d.mentions_of(EntityType::kEvent) = StringList(Optional(v, "events"), at + ".events");
    if (const json* nouns = Optional(v, "nouns")) {
      for (std::size_t i = 0; i < Array(*nouns, at + ".nouns").size(); ++i) {
        const std::string n_at = at + ".nouns[" + std::to_string(i) + "]";
        const json& item = (*nouns)[i];
        d.nouns.push_back({String(Field(item, "noun", n_at), n_at + ".noun"),
                           ReadEmbedding(Field(item, "embedding", n_at), n_at + ".embedding")});
      }
    }
    if (const json* image = Optional(v, "image")) {
      const std::string i_at = at + ".image";
      if (!image->is_object()) throw MalformedManifest(i_at + " is not an object");
      ImageFeatures& img = d.image;
      if (const json* faces = Optional(*image, "faces")) {
        for (std::size_t i = 0; i < Array(*faces, i_at + ".faces").size(); ++i) {
          img.faces.push_back(ReadEmbedding((*faces)[i], i_at + ".faces[" + std::to_string(i) + "]"));
        }
      }
      if (const json* g = Optional(*image, "geo")) img.geo = ReadEmbedding(*g, i_at + ".geo");
      if (const json* s = Optional(*image, "scene")) img.scene = ReadEmbedding(*s, i_at + ".scene");
      if (const json* s = Optional(*image, "similarity")) {
        img.similarity = ReadEmbedding(*s, i_at + ".similarity");
      }
      if (const json* p = Optional(*image, "scene_probabilities")) {
        img.scene_probabilities = ReadProbabilities(*p, i_at + ".scene_probabilities");
      }
      if (const json* k = Optional(*image, "scene_kind")) {
        const std::string kind = String(*k, i_at + ".scene_kind");
        img.scene_kind = ParseSceneKind(kind);
        if (!img.scene_kind) throw MalformedManifest(i_at + " has unknown scene_kind '" + kind + "'");
      }
    }
    return d;
  }

  SceneVocabulary ReadVocabulary(const json* v) {
    SceneVocabulary vocab;
    if (v == nullptr) return vocab;
    for (std::size_t i = 0; i < Array(*v, "scene_vocabulary").size(); ++i) {
      const std::string at = "scene_vocabulary[" + std::to_string(i) + "]";
      const json& item = (*v)[i];
      SceneClass c{String(Field(item, "id", at), at + ".id"), "",
                   ReadEmbedding(Field(item, "embedding", at), at + ".embedding")};
      if (const json* label = Optional(item, "label")) c.label = String(*label, at + ".label");
      vocab.classes.push_back(std::move(c));
    }
    return vocab;
  }

 private:
  BlobCache blobs_;
};

json RefJson(const BlobRef& ref) { return {{"blob", ref.blob}, {"row", ref.row}}; }

// Accumulates vectors of one role for a single blob file.
class BlobBuilder {
 public:
  explicit BlobBuilder(std::string name) : name_(std::move(name)) {}

  json Add(const Embedding& e) {
    vectors_.push_back(e);
    return RefJson({name_, vectors_.size() - 1});
  }

  void Write(const fs::path& dir) const {
    if (!vectors_.empty()) WriteEmbeddingBlob(vectors_, dir / name_);
  }

 private:
  std::string name_;
  std::vector<Embedding> vectors_;
};

}  // namespace

Corpus LoadManifest(const std::filesystem::path& path,
                    const LoadOptions& options) {
  fs::path file = path;
  if (fs::is_directory(path)) file = path / kManifestFileName;
  std::ifstream in(file);
  if (!in) throw MalformedManifest("cannot open " + file.string());

  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedManifest(file.string() + ": " + e.what());
  }
  if (!root.is_object()) throw MalformedManifest("manifest root is not an object");
  if (const json* fmt = Optional(root, "format");
      fmt && String(*fmt, "format") != kManifestFormat) {
    throw MalformedManifest("unexpected format '" + fmt->get<std::string>() + "'");
  }
  if (const json* ver = Optional(root, "version");
      ver && (!ver->is_number_integer() || ver->get<int>() != kManifestVersion)) {
    throw MalformedManifest("unsupported manifest version " + ver->dump());
  }

  Reader reader(file.parent_path());
  const std::string corpus_id = String(Field(root, "corpus_id", "manifest"), "corpus_id");

  CorpusOptions corpus_options;
  if (const json* cap = Optional(root, "per_source_cap")) {
    if (!cap->is_number_unsigned() || cap->get<std::size_t>() == 0) {
      throw MalformedManifest("per_source_cap must be a positive integer");
    }
    corpus_options.per_source_cap = cap->get<std::size_t>();
  }
  if (options.per_source_cap) corpus_options.per_source_cap = *options.per_source_cap;

  SceneVocabulary vocab = reader.ReadVocabulary(Optional(root, "scene_vocabulary"));

  std::vector<Entity> entities;
  const json& ents = Array(Field(root, "entities", "manifest"), "entities");
  for (std::size_t i = 0; i < ents.size(); ++i) {
    entities.push_back(reader.ReadEntity(ents[i], "entities[" + std::to_string(i) + "]"));
  }
  std::vector<Document> documents;
  const json& docs = Array(Field(root, "documents", "manifest"), "documents");
  for (std::size_t i = 0; i < docs.size(); ++i) {
    documents.push_back(reader.ReadDocument(docs[i], "documents[" + std::to_string(i) + "]"));
  }

  Corpus corpus(corpus_id, std::move(entities), std::move(documents),
                std::move(vocab), corpus_options);

  if (const json* dims = Optional(root, "embedding_dims")) {
    if (!dims->is_object()) throw MalformedManifest("embedding_dims must be an object");
    for (const auto& [name, value] : dims->items()) {
      auto role = ParseEmbeddingRole(name);
      if (!role) throw MalformedManifest("unknown embedding role '" + name + "'");
      if (!value.is_number_unsigned()) {
        throw MalformedManifest("embedding_dims." + name + " must be a positive integer");
      }
      auto it = corpus.embedding_dims().find(*role);
      if (it != corpus.embedding_dims().end() && it->second != value.get<std::size_t>()) {
        throw IntegrityError("declared " + name + " dim " + value.dump() +
                             " but vectors have dim " + std::to_string(it->second));
      }
    }
  }
  return corpus;
}

void WriteManifest(const Corpus& corpus, const std::filesystem::path& dir) {
  fs::create_directories(dir);
  std::map<EmbeddingRole, BlobBuilder> blobs;
  auto blob = [&](EmbeddingRole role) -> BlobBuilder& {
    auto it = blobs.find(role);
    if (it == blobs.end()) {
      it = blobs.emplace(role, BlobBuilder(std::string(ToString(role)) + ".xmec")).first;
    }
    return it->second;
  };

  json root;
  root["format"] = kManifestFormat;
  root["version"] = kManifestVersion;
  root["corpus_id"] = corpus.id();
  root["per_source_cap"] = corpus.options().per_source_cap;
  json dims = json::object();
  for (const auto& [role, dim] : corpus.embedding_dims()) dims[std::string(ToString(role))] = dim;
  root["embedding_dims"] = dims;

  json vocab = json::array();
  for (const SceneClass& c : corpus.vocabulary().classes) {
    vocab.push_back({{"id", c.id}, {"label", c.label},
                     {"embedding", blob(EmbeddingRole::kWord).Add(c.embedding)}});
  }
  root["scene_vocabulary"] = vocab;

  json entities = json::array();
  for (const Entity& e : corpus.entities()) {
    json j = {{"id", e.id}, {"type", ToString(e.type())}, {"label", e.label}};
    if (const PersonAttrs* p = e.person()) {
      j["gender"] = p->gender;
      j["citizenship"] = p->citizenship;
    } else if (const LocationAttrs* l = e.location()) {
      j["latitude"] = l->coordinates.latitude;
      j["longitude"] = l->coordinates.longitude;
      j["parent_classes"] = l->parent_classes;
    } else if (const EventAttrs* ev = e.event()) {
      j["parent_classes"] = ev->parent_classes;
    }
    json refs = json::array();
    for (const ReferenceImage& r : e.references) {
      refs.push_back({{"source", r.source},
                      {"embedding", blob(ReferenceRole(e.type())).Add(r.embedding)}});
    }
    j["references"] = refs;
    entities.push_back(std::move(j));
  }
  root["entities"] = entities;

  json documents = json::array();
  for (const Document& d : corpus.documents()) {
    json j = {{"id", d.id},
              {"persons", d.mentions_of(EntityType::kPerson)},
              {"locations", d.mentions_of(EntityType::kLocation)},
              {"events", d.mentions_of(EntityType::kEvent)}};
    json nouns = json::array();
    for (const NounContext& n : d.nouns) {
      nouns.push_back({{"noun", n.noun}, {"embedding", blob(EmbeddingRole::kWord).Add(n.embedding)}});
    }
    j["nouns"] = nouns;
    json image = json::object();
    json faces = json::array();
    for (const Embedding& f : d.image.faces) faces.push_back(blob(EmbeddingRole::kFace).Add(f));
    image["faces"] = faces;
    if (d.image.geo) image["geo"] = blob(EmbeddingRole::kGeo).Add(*d.image.geo);
    if (d.image.scene) image["scene"] = blob(EmbeddingRole::kScene).Add(*d.image.scene);
    if (d.image.similarity) {
      image["similarity"] = blob(EmbeddingRole::kImageSimilarity).Add(*d.image.similarity);
    }
    if (d.image.scene_probabilities) image["scene_probabilities"] = *d.image.scene_probabilities;
    if (d.image.scene_kind) image["scene_kind"] = ToString(*d.image.scene_kind);
    j["image"] = std::move(image);
    documents.push_back(std::move(j));
  }
  root["documents"] = documents;

  for (const auto& [role, builder] : blobs) builder.Write(dir);
  std::ofstream out(dir / kManifestFileName, std::ios::trunc);
  if (!out) throw IoError("cannot write " + (dir / kManifestFileName).string());
  out << root.dump(1) << '\n';
  if (!out) throw IoError("write failed: " + (dir / kManifestFileName).string());
}

}  // namespace xmc
