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

#ifndef XMC_CORE_STATS_H_
#define XMC_CORE_STATS_H_

#include <array>
#include <cstddef>
#include <optional>

#include "xmc/core/corpus.h"

namespace xmc {

// One row of the corpus statistics table.
struct StatsRow {
  std::size_t documents = 0;                  // |D|
  std::optional<std::size_t> unique_entities;  // T*, absent for context
  std::optional<double> mean_entities;        // mean T, absent when |D| = 0
};

struct CorpusStats {
  // Context row: every document, mean number of noun candidates.
  StatsRow context;
  std::array<StatsRow, 3> by_type;

  const StatsRow& of(EntityType t) const {
    return by_type[static_cast<std::size_t>(t)];
  }
};

CorpusStats ComputeCorpusStats(const Corpus& corpus);

}  // namespace xmc

#endif  // XMC_CORE_STATS_H_
