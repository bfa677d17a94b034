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

#ifndef XMC_SYNTH_SYNTHETIC_CORPUS_H_
#define XMC_SYNTH_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "xmc/core/corpus.h"

namespace xmc {

// Parameters of a generated corpus. Every entity has a latent visual
// identity; its reference images and the photos of documents that depict it
// are noisy copies of that identity. Entities sharing a parent class (or, for
// persons, a gender and citizenship group) share part of their identity, so
// constrained tampering finds visually closer replacements than random
// tampering does.
//
// Noise is the ratio of the perturbation norm to the signal norm: a noisy
// copy has cosine about 1 / sqrt(1 + noise^2) with its source.
struct SynthOptions {
  std::string corpus_id = "synthetic";
  std::uint64_t seed = 1;
  std::size_t documents = 200;
  // Entities per type; each document depicts entity (index mod entities).
  // Zero means one per document.
  std::size_t entities = 0;
  std::size_t dim = 32;
  std::size_t vocabulary = 24;
  std::size_t nouns_per_document = 6;

  double reference_noise = 0.5;
  double image_noise = 0.5;
  // Share of an identity taken from its group prototype, in [0, 1).
  double group_weight = 0.0;

  std::size_t references_per_source = 5;
  // Unrelated faces added to each person gallery.
  std::size_t outlier_faces = 2;
  // Chance that a document also mentions an entity its photo does not show.
  double extra_mention_probability = 0.3;

  std::size_t parent_classes = 8;
  std::size_t countries = 6;

  // Presets for the acceptance scenarios.
  static SynthOptions Separable();
  static SynthOptions Overlapping();
};

// Deterministic for given options. Every embedding component is rounded to
// binary32, so the corpus survives a manifest round trip unchanged.
Corpus GenerateSyntheticCorpus(const SynthOptions& options);

}  // namespace xmc

#endif  // XMC_SYNTH_SYNTHETIC_CORPUS_H_
