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

#include "xmc/service/serialize.h"

#include <cstdio>
#include <sstream>

namespace xmc {
namespace {

using nlohmann::json;

std::string PluralName(EntityType t) {
  switch (t) {
    case EntityType::kPerson:
      return "persons";
    case EntityType::kLocation:
      return "locations";
    case EntityType::kEvent:
      return "events";
  }
  return "";
}

std::string LabelOf(const Corpus& corpus, const std::string& id) {
  const Entity* e = corpus.FindEntity(id);
  return e ? e->label : id;
}

json SkippedToJson(const std::vector<SkippedEntity>& skipped,
                   const Corpus& corpus) {
  json out = json::array();
  for (const auto& s : skipped) {
    out.push_back({{"entity_id", s.entity_id},
                   {"label", LabelOf(corpus, s.entity_id)},
                   {"reason", std::string(ToString(s.reason))}});
  }
  return out;
}

json EntityBreakdownToJson(const EntityBreakdown& b, const Corpus& corpus) {
  json entities = json::array();
  for (const auto& e : b.entities) {
    entities.push_back({{"entity_id", e.entity_id},
                        {"label", LabelOf(corpus, e.entity_id)},
                        {"similarity", e.similarity}});
  }
  return {{"entities", entities}, {"skipped", SkippedToJson(b.skipped, corpus)}};
}

json OptionalJson(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json MeasureValueToJson(const MeasureValue& v) {
  json j;
  j["value"] = v.value ? json(*v.value) : json(nullptr);
  if (v.absence) j["absent"] = std::string(ToString(*v.absence));
  return j;
}

json ScoresToJson(const ScoredDocument& scored) {
  json measures = json::object();
  for (Measure m : kMeasures) {
    measures[std::string(ToString(m))] = MeasureValueToJson(scored.measure(m));
  }
  return {{"doc_id", scored.doc_id}, {"measures", measures}};
}

json ScoredDetailToJson(const ScoredDocument& scored, const Corpus& corpus,
                        const EngineConfig& config) {
  json j = ScoresToJson(scored);

  json persons;
  json columns = json::array();
  for (const auto& id : scored.persons.persons) {
    columns.push_back({{"entity_id", id}, {"label", LabelOf(corpus, id)}});
  }
  persons["persons"] = columns;
  persons["faces"] = scored.persons.matrix;
  persons["skipped"] = SkippedToJson(scored.persons.skipped, corpus);
  j["persons"] = persons;
  j["locations"] = EntityBreakdownToJson(scored.locations, corpus);
  j["events"] = EntityBreakdownToJson(scored.events, corpus);

  json nouns = json::array();
  for (const auto& n : scored.context.nouns) {
    nouns.push_back({{"noun", n.noun}, {"similarity", n.similarity}});
  }
  j["context"] = {{"nouns", nouns}};

  json intervals = json::object();
  for (const auto& [m, interval] : config.color_intervals) {
    intervals[std::string(ToString(m))] = {interval.lower, interval.upper};
  }
  j["color_intervals"] = intervals;
  return j;
}

json StatsToJson(const CorpusStats& stats) {
  json documents, unique, mean;
  documents["context"] = stats.context.documents;
  mean["context"] = OptionalJson(stats.context.mean_entities);
  for (EntityType t : kEntityTypes) {
    const StatsRow& row = stats.of(t);
    documents[PluralName(t)] = row.documents;
    unique[PluralName(t)] = OptionalJson(row.unique_entities);
    mean[PluralName(t)] = OptionalJson(row.mean_entities);
  }
  return {{"documents", documents},
          {"unique_entities", unique},
          {"mean_entities", mean}};
}

std::string FormatStatsTable(const CorpusStats& stats) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s\n", "", "|D|", "T*",
                "mean T");
  out << line;
  auto row = [&](const std::string& name, const StatsRow& r) {
    std::string unique = r.unique_entities ? std::to_string(*r.unique_entities) : "-";
    char mean[32] = "-";
    if (r.mean_entities) std::snprintf(mean, sizeof(mean), "%.2f", *r.mean_entities);
    std::snprintf(line, sizeof(line), "%-10s %10zu %10s %10s\n", name.c_str(),
                  r.documents, unique.c_str(), mean);
    out << line;
  };
  row("context", stats.context);
  for (EntityType t : kEntityTypes) row(PluralName(t), stats.of(t));
  return out.str();
}

}  // namespace xmc
