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

#include "xmc/synth/synthetic_corpus.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "xmc/core/errors.h"
#include "xmc/tamper/rng.h"

namespace xmc {
namespace {

constexpr double kPi = std::numbers::pi;

std::string Id(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%05zu", prefix, i);
  return buf;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double Uniform() { return rng_.UniformReal(); }
  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(rng_.UniformIndex(n)); }

  double Gaussian() {
    const double u1 = 1.0 - Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  std::vector<double> UnitVector(std::size_t dim) {
    for (;;) {
      std::vector<double> v(dim);
      for (double& x : v) x = Gaussian();
      if (Normalize(v)) return v;
    }
  }

  // base + noise * g with |g| ~ 1, renormalized.
  std::vector<double> NoisyCopy(const std::vector<double>& base, double noise) {
    const double scale = noise / std::sqrt(static_cast<double>(base.size()));
    for (;;) {
      std::vector<double> v(base);
      for (double& x : v) x += scale * Gaussian();
      if (Normalize(v)) return v;
    }
  }

  static bool Normalize(std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (!(n > 1e-6)) return false;
    for (double& x : v) x /= n;
    return true;
  }

 private:
  Rng rng_;
};

Embedding ToEmbedding(std::vector<double> v) {
  for (double& x : v) x = static_cast<double>(static_cast<float>(x));
  return Embedding(std::move(v));
}

std::vector<double> Mix(const std::vector<double>& prototype,
                        const std::vector<double>& own, double weight) {
  std::vector<double> v(own.size());
  const double a = std::sqrt(weight);
  const double b = std::sqrt(1.0 - weight);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * prototype[i] + b * own[i];
  Generator::Normalize(v);
  return v;
}

// Point at `distance_km` from `origin` along `bearing` (radians).
Coordinates Destination(const Coordinates& origin, double distance_km, double bearing) {
  const double r = distance_km / 6371.0;
  const double lat1 = origin.latitude * kPi / 180.0;
  const double lon1 = origin.longitude * kPi / 180.0;
  const double lat2 = std::asin(std::sin(lat1) * std::cos(r) +
                                std::cos(lat1) * std::sin(r) * std::cos(bearing));
  const double lon2 = lon1 + std::atan2(std::sin(bearing) * std::sin(r) * std::cos(lat1),
                                        std::cos(r) - std::sin(lat1) * std::sin(lat2));
  double lon = std::fmod(lon2 * 180.0 / kPi + 540.0, 360.0) - 180.0;
  if (lon <= -180.0) lon += 360.0;
  return {lat2 * 180.0 / kPi, lon};
}

}  // namespace

SynthOptions SynthOptions::Separable() {
  SynthOptions o;
  o.vocabulary = 512;
  return o;
}

SynthOptions SynthOptions::Overlapping() {
  SynthOptions o;
  o.corpus_id = "synthetic-overlapping";
  o.reference_noise = 2.0;
  o.image_noise = 2.0;
  o.group_weight = 0.6;
  return o;
}

Corpus GenerateSyntheticCorpus(const SynthOptions& o) {
  if (o.documents == 0 || o.dim == 0 || o.parent_classes == 0 || o.countries == 0) {
    throw InvalidArgument("synthetic corpus needs documents, dim, classes and countries");
  }
  if (!(o.group_weight >= 0.0 && o.group_weight < 1.0)) {
    throw InvalidArgument("group_weight must be in [0, 1)");
  }
  Generator gen(o.seed);
  const std::size_t n_entities = o.entities == 0 ? o.documents : o.entities;
  const std::size_t dim = o.dim;

  std::vector<std::vector<double>> class_prototypes;
  std::vector<Coordinates> region_centers;
  for (std::size_t k = 0; k < o.parent_classes; ++k) {
    class_prototypes.push_back(gen.UnitVector(dim));
    region_centers.push_back({-60.0 + 120.0 * gen.Uniform(), -179.0 + 358.0 * gen.Uniform()});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> person_prototypes;

  auto references = [&](const std::vector<double>& identity, std::size_t outliers) {
    std::vector<ReferenceImage> refs;
    for (const char* source : {"google", "bing"}) {
      for (std::size_t r = 0; r < o.references_per_source; ++r) {
        refs.push_back({source, ToEmbedding(gen.NoisyCopy(identity, o.reference_noise))});
      }
    }
    refs.push_back({"wikidata", ToEmbedding(gen.NoisyCopy(identity, o.reference_noise))});
    for (std::size_t r = 0; r < outliers; ++r) {
      refs.push_back({"bing", ToEmbedding(gen.UnitVector(dim))});
    }
    return refs;
  };

  std::vector<Entity> entities;
  std::vector<std::vector<double>> person_id, location_id, event_id;
  for (std::size_t i = 0; i < n_entities; ++i) {
    PersonAttrs attrs;
    const std::size_t gender = gen.Index(2);
    const std::size_t country = gen.Index(o.countries);
    attrs.gender = gender == 0 ? "female" : "male";
    attrs.citizenship.insert("C" + std::to_string(country));
    if (gen.Uniform() < 0.2) attrs.citizenship.insert("C" + std::to_string(gen.Index(o.countries)));
    auto& proto = person_prototypes[{gender, country}];
    if (proto.empty()) proto = gen.UnitVector(dim);
    person_id.push_back(Mix(proto, gen.UnitVector(dim), o.group_weight));
    entities.push_back({Id('P', i), "Person " + std::to_string(i), attrs,
                        references(person_id.back(), o.outlier_faces)});
  }
  for (std::size_t i = 0; i < n_entities; ++i) {
    const std::size_t k = gen.Index(o.parent_classes);
    LocationAttrs attrs;
    attrs.coordinates = Destination(region_centers[k], 1500.0 * std::sqrt(gen.Uniform()),
                                    2.0 * kPi * gen.Uniform());
    attrs.parent_classes.insert("R" + std::to_string(k));
    location_id.push_back(Mix(class_prototypes[k], gen.UnitVector(dim), o.group_weight));
    entities.push_back({Id('L', i), "Location " + std::to_string(i), attrs,
                        references(location_id.back(), 0)});
  }
  std::vector<std::vector<double>> event_prototypes;
  for (std::size_t k = 0; k < o.parent_classes; ++k) event_prototypes.push_back(gen.UnitVector(dim));
  for (std::size_t i = 0; i < n_entities; ++i) {
    const std::size_t k = gen.Index(o.parent_classes);
    EventAttrs attrs;
    attrs.parent_classes.insert("K" + std::to_string(k));
    event_id.push_back(Mix(event_prototypes[k], gen.UnitVector(dim), o.group_weight));
    entities.push_back({Id('E', i), "Event " + std::to_string(i), attrs,
                        references(event_id.back(), 0)});
  }

  SceneVocabulary vocab;
  std::vector<std::vector<double>> scene_words, scene_looks;
  for (std::size_t s = 0; s < o.vocabulary; ++s) {
    scene_words.push_back(gen.UnitVector(dim));
    scene_looks.push_back(gen.UnitVector(dim));
    vocab.classes.push_back({Id('S', s), "scene " + std::to_string(s), ToEmbedding(scene_words.back())});
  }

  std::vector<Document> documents;
  for (std::size_t d = 0; d < o.documents; ++d) {
    Document doc;
    doc.id = Id('D', d);
    const std::size_t e = d % n_entities;
    const char prefixes[] = {'P', 'L', 'E'};
    for (std::size_t t = 0; t < 3; ++t) {
      auto& list = doc.mentions[t];
      list.push_back(Id(prefixes[t], e));
      if (n_entities > 1 && gen.Uniform() < o.extra_mention_probability) {
        std::size_t other = gen.Index(n_entities - 1);
        if (other >= e) ++other;
        list.push_back(Id(prefixes[t], other));
      }
    }
    doc.image.faces.push_back(ToEmbedding(gen.NoisyCopy(person_id[e], o.image_noise)));
    if (gen.Uniform() < 0.5) doc.image.faces.push_back(ToEmbedding(gen.UnitVector(dim)));
    doc.image.geo = ToEmbedding(gen.NoisyCopy(location_id[e], o.image_noise));
    doc.image.scene = ToEmbedding(gen.NoisyCopy(event_id[e], o.image_noise));
    doc.image.scene_kind = gen.Uniform() < 0.5 ? SceneKind::kIndoor : SceneKind::kOutdoor;

    if (o.vocabulary > 0) {
      const std::size_t scene = gen.Index(o.vocabulary);
      std::vector<double> probs(o.vocabulary);
      double rest = 0.0;
      for (double& p : probs) rest += (p = gen.Uniform());
      const double peak = 0.5 + 0.3 * gen.Uniform();
      for (double& p : probs) p *= (1.0 - peak) / rest;
      probs[scene] += peak;
      doc.image.scene_probabilities = probs;
      doc.image.similarity = ToEmbedding(gen.NoisyCopy(scene_looks[scene], o.image_noise));
      for (std::size_t n = 0; n < o.nouns_per_document; ++n) {
        if (n == 0) {
          doc.nouns.push_back({"noun-" + vocab.classes[scene].id,
                               ToEmbedding(gen.NoisyCopy(scene_words[scene], o.reference_noise))});
        } else {
          doc.nouns.push_back({"word-" + std::to_string(gen.Index(1000)),
                               ToEmbedding(gen.UnitVector(dim))});
        }
      }
    }
    documents.push_back(std::move(doc));
  }
  return Corpus(o.corpus_id, std::move(entities), std::move(documents), std::move(vocab));
}

}  // namespace xmc
