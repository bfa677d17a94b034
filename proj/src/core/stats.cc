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

#include "xmc/core/stats.h"

#include <set>
#include <string>

namespace xmc {

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  CorpusStats stats;
  const auto& docs = corpus.documents();

  stats.context.documents = docs.size();
  if (!docs.empty()) {
    std::size_t nouns = 0;
    for (const Document& d : docs) nouns += d.nouns.size();
    stats.context.mean_entities =
        static_cast<double>(nouns) / static_cast<double>(docs.size());
  }

  for (EntityType type : kEntityTypes) {
    StatsRow& row = stats.by_type[static_cast<std::size_t>(type)];
    std::set<std::string> unique;
    std::size_t mention_total = 0;
    for (const Document& d : docs) {
      const auto distinct = DistinctMentions(d, type);
      if (distinct.empty()) continue;
      ++row.documents;
      mention_total += distinct.size();
      unique.insert(distinct.begin(), distinct.end());
    }
    row.unique_entities = unique.size();
    if (row.documents > 0) {
      row.mean_entities = static_cast<double>(mention_total) /
                          static_cast<double>(row.documents);
    }
  }
  return stats;
}

}  // namespace xmc
