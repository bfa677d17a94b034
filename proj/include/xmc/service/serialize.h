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

#ifndef XMC_SERVICE_SERIALIZE_H_
#define XMC_SERVICE_SERIALIZE_H_

#include <string>

#include "json.hpp"
#include "xmc/core/corpus.h"
#include "xmc/core/stats.h"
#include "xmc/service/config.h"
#include "xmc/simeng/measures.h"

namespace xmc {

// {"value": 0.83} or {"value": null, "absent": "no faces"}.
nlohmann::json MeasureValueToJson(const MeasureValue& v);

// {"doc_id": ..., "measures": {"cmps": {...}, ...}}
nlohmann::json ScoresToJson(const ScoredDocument& scored);

// Scores plus the per-entity, per-face and per-noun breakdowns. Entity
// labels are looked up in `corpus`; color intervals come from `config`.
nlohmann::json ScoredDetailToJson(const ScoredDocument& scored,
                                  const Corpus& corpus,
                                  const EngineConfig& config);

// {"documents": {"context": n, "persons": n, ...}, "unique_entities": {...},
//  "mean_entities": {...}}
nlohmann::json StatsToJson(const CorpusStats& stats);
std::string FormatStatsTable(const CorpusStats& stats);

}  // namespace xmc

#endif  // XMC_SERVICE_SERIALIZE_H_
