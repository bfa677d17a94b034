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

#ifndef XMC_SIMENG_MEASURES_INTERNAL_H_
#define XMC_SIMENG_MEASURES_INTERNAL_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "xmc/simeng/measures.h"

namespace xmc::internal {

// Reference vector per person id; nullopt marks a degenerate gallery mean.
using PersonReferences = std::unordered_map<std::string, std::optional<Embedding>>;

std::optional<Embedding> BuildPersonReference(const Entity& person,
                                              const ClusteringParams& params);

// `refs` must cover every mentioned person with references when scoring in
// clustering mode; it is ignored in aggregator mode.
PersonResult ScorePersons(const Document& doc, const Corpus& corpus,
                          const PersonScoring& scoring,
                          const PersonReferences& refs);

EntityResult ScoreEntities(const Document& doc, const Corpus& corpus,
                           EntityType type, const Aggregator& agg);

// Scene-class embeddings scaled to unit length, row per class.
std::vector<std::vector<double>> UnitVocabulary(const SceneVocabulary& vocab);

ContextResult ScoreContext(const Document& doc,
                           const std::vector<std::vector<double>>& unit_vocab);

}  // namespace xmc::internal

#endif  // XMC_SIMENG_MEASURES_INTERNAL_H_
