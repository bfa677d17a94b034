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

#ifndef XMC_TESTS_TEST_UTIL_H_
#define XMC_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "xmc/core/corpus.h"

namespace xmc::testing {

inline Embedding Emb(std::initializer_list<double> v) { return Embedding(std::vector<double>(v)); }

inline std::vector<double> RandomVec(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = n(rng);
  return v;
}

inline Embedding RandomEmb(std::mt19937_64& rng, std::size_t dim) {
  return Embedding(RandomVec(rng, dim));
}

// base + noise * random, each component rounded to float.
inline Embedding Near(std::mt19937_64& rng, const Embedding& base, double noise) {
  auto v = RandomVec(rng, base.dim());
  std::vector<double> out(base.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(base.values()[i] + noise * v[i]);
  }
  return Embedding(std::move(out));
}

inline std::vector<ReferenceImage> Refs(std::vector<Embedding> embs,
                                        const std::string& source = "web") {
  std::vector<ReferenceImage> out;
  for (auto& e : embs) out.push_back({source, std::move(e)});
  return out;
}

inline Entity Person(std::string id, std::string gender, std::set<std::string> citizenship,
                     std::vector<ReferenceImage> refs = {}) {
  return {id, id, PersonAttrs{std::move(gender), std::move(citizenship)}, std::move(refs)};
}

inline Entity Location(std::string id, double lat, double lon,
                       std::set<std::string> parents = {},
                       std::vector<ReferenceImage> refs = {}) {
  return {id, id, LocationAttrs{{lat, lon}, std::move(parents)}, std::move(refs)};
}

inline Entity Event(std::string id, std::set<std::string> parents = {},
                    std::vector<ReferenceImage> refs = {}) {
  return {id, id, EventAttrs{std::move(parents)}, std::move(refs)};
}

inline Document Doc(std::string id, std::vector<std::string> persons = {},
                    std::vector<std::string> locations = {},
                    std::vector<std::string> events = {}) {
  Document d;
  d.id = std::move(id);
  d.mentions = {std::move(persons), std::move(locations), std::move(events)};
  return d;
}

inline SceneVocabulary Vocab(std::vector<Embedding> classes) {
  SceneVocabulary v;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    v.classes.push_back({"S" + std::to_string(i), "scene " + std::to_string(i), std::move(classes[i])});
  }
  return v;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("xmc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// A corpus with random embeddings and every kind of gap: documents without
// faces, features, nouns or probabilities, entities without references,
// repeated mentions and duplicate gallery faces.
inline Corpus RandomCorpus(std::uint64_t seed, std::size_t n_docs, std::size_t dim) {
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  const std::size_t n_ent = 12, n_vocab = 8;
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < n_ent; ++i) {
    auto gallery = [&](std::size_t max) {
      std::vector<Embedding> e;
      const std::size_t k = coin(0.1) ? 0 : 1 + pick(max);
      const Embedding center = RandomEmb(rng, dim);
      for (std::size_t j = 0; j < k; ++j) {
        if (j > 0 && coin(0.1)) {
          e.push_back(e.back());
        } else {
          e.push_back(coin(0.3) ? RandomEmb(rng, dim) : Near(rng, center, 0.6));
        }
      }
      return Refs(std::move(e));
    };
    const std::string n = std::to_string(i);
    entities.push_back(Person("P" + n, i % 2 ? "female" : "male", {"C" + std::to_string(i % 3)}, gallery(9)));
    entities.push_back(Location("L" + n, -60.0 + 10.0 * i, -170.0 + 25.0 * i, {"R" + std::to_string(i % 4)}, gallery(8)));
    entities.push_back(Event("E" + n, {"K" + std::to_string(i % 4)}, gallery(8)));
  }
  std::vector<Embedding> classes;
  for (std::size_t i = 0; i < n_vocab; ++i) classes.push_back(RandomEmb(rng, dim));

  std::vector<Document> docs;
  for (std::size_t d = 0; d < n_docs; ++d) {
    Document doc = Doc("D" + std::to_string(1000 + d));
    for (std::size_t t = 0; t < 3; ++t) {
      const char prefix = "PLE"[t];
      const std::size_t k = pick(4);
      for (std::size_t j = 0; j < k; ++j) doc.mentions[t].push_back(prefix + std::to_string(pick(n_ent)));
    }
    const std::size_t faces = pick(4);
    for (std::size_t j = 0; j < faces; ++j) doc.image.faces.push_back(RandomEmb(rng, dim));
    if (coin(0.85)) doc.image.geo = RandomEmb(rng, dim);
    if (coin(0.85)) doc.image.scene = RandomEmb(rng, dim);
    if (coin(0.85)) {
      std::vector<double> p(n_vocab);
      double s = 0;
      for (double& x : p) s += (x = coin(0.3) ? 0.0 : std::uniform_real_distribution<double>(0, 1)(rng));
      if (s == 0) p[0] = s = 1;
      for (double& x : p) x /= s;
      doc.image.scene_probabilities = p;
    }
    const std::size_t nouns = coin(0.1) ? 0 : 1 + pick(5);
    for (std::size_t j = 0; j < nouns; ++j) doc.nouns.push_back({"noun" + std::to_string(j), RandomEmb(rng, dim)});
    docs.push_back(std::move(doc));
  }
  return Corpus("random-" + std::to_string(seed), std::move(entities), std::move(docs), Vocab(std::move(classes)));
}

// 300 entities (100 per type) with clustered coordinates and overlapping
// attributes, 120 documents with 1-3 mentions per type and an
// image-similarity embedding.
inline Corpus TamperFixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  const double centers[][2] = {{52.5, 13.4}, {48.9, 2.35}, {40.7, -74.0}, {-33.9, 151.2}, {35.7, 139.7}};
  const char* genders[] = {"female", "male", "nonbinary"};
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < 100; ++i) {
    std::set<std::string> countries = {"C" + std::to_string(pick(5))};
    if (pick(4) == 0) countries.insert("C" + std::to_string(pick(5)));
    const std::string gender = pick(20) == 0 ? "" : genders[pick(3)];
    entities.push_back(Person("P" + std::to_string(100 + i), gender, countries,
                              Refs({RandomEmb(rng, 4)})));
    const auto& c = centers[pick(5)];
    entities.push_back(Location("L" + std::to_string(100 + i), c[0] + jitter(rng), c[1] + jitter(rng),
                                {"R" + std::to_string(pick(3))}, Refs({RandomEmb(rng, 4)})));
    std::set<std::string> parents = {"K" + std::to_string(pick(6))};
    if (pick(3) == 0) parents.insert("K" + std::to_string(pick(6)));
    entities.push_back(Event("E" + std::to_string(100 + i), parents, Refs({RandomEmb(rng, 4)})));
  }
  std::vector<Document> docs;
  for (std::size_t d = 0; d < 120; ++d) {
    Document doc = Doc("doc" + std::to_string(1000 + d));
    for (std::size_t t = 0; t < 3; ++t) {
      const std::size_t k = 1 + pick(3);
      for (std::size_t j = 0; j < k; ++j) doc.mentions[t].push_back(std::string(1, "PLE"[t]) + std::to_string(100 + pick(100)));
    }
    doc.image.faces = {RandomEmb(rng, 4)};
    doc.image.geo = RandomEmb(rng, 4);
    doc.image.scene = RandomEmb(rng, 4);
    doc.image.similarity = RandomEmb(rng, 6);
    docs.push_back(std::move(doc));
  }
  return Corpus("tamper-fixture", std::move(entities), std::move(docs), {});
}

}  // namespace xmc::testing

#endif  // XMC_TESTS_TEST_UTIL_H_
