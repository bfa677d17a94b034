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

#include "xmc/service/config.h"

#include <cmath>
#include <charconv>
#include <fstream>

#include "xmc/core/errors.h"
#include "xmc/tamper/rng.h"

namespace xmc {
namespace {

using nlohmann::json;

std::string Shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

Aggregator ParseAggregatorOrThrow(const std::string& text) {
  auto agg = Aggregator::Parse(text);
  if (!agg) throw InvalidArgument("unknown aggregator '" + text + "'");
  return *agg;
}

}  // namespace

void EngineConfig::Validate() const {
  scoring.Validate();
  for (double q : quantile_options) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("quantile option outside (0, 1]");
  }
  const auto offered = [&](const Aggregator& agg) {
    if (agg.kind() == Aggregator::Kind::kMax) return;
    for (double q : quantile_options) {
      if (std::abs(q - agg.q()) < 1e-12) return;
    }
    throw InvalidArgument("aggregator '" + agg.ToString() + "' is not a quantile option");
  };
  if (scoring.persons.aggregator) offered(*scoring.persons.aggregator);
  offered(scoring.locations);
  offered(scoring.events);
  if (rng_algorithm != kRngAlgorithm) {
    throw InvalidArgument("unsupported rng '" + rng_algorithm + "'");
  }
  if (recall_percents.empty()) throw InvalidArgument("no recall levels");
  for (int r : recall_percents) {
    if (r != 25 && r != 50 && r != 100) throw InvalidArgument("recall level must be 25, 50 or 100");
  }
  for (const auto& [m, interval] : color_intervals) {
    if (!(interval.lower < interval.upper)) {
      throw InvalidArgument("color interval for " + std::string(ToString(m)) +
                            " needs lower < upper");
    }
  }
}

EngineConfig ConfigFromJson(const json& j, const EngineConfig& base) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  EngineConfig c = base;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "tau_p") {
        c.scoring.persons.clustering.tau_p = value.get<double>();
      } else if (key == "persons") {
        const auto mode = value.get<std::string>();
        if (mode == "cluster") {
          c.scoring.persons.aggregator.reset();
        } else {
          c.scoring.persons.aggregator = ParseAggregatorOrThrow(mode);
        }
      } else if (key == "locations") {
        c.scoring.locations = ParseAggregatorOrThrow(value.get<std::string>());
      } else if (key == "events") {
        c.scoring.events = ParseAggregatorOrThrow(value.get<std::string>());
      } else if (key == "quantile_options") {
        c.quantile_options = value.get<std::vector<double>>();
      } else if (key == "rng") {
        c.rng_algorithm = value.get<std::string>();
      } else if (key == "recall_levels") {
        c.recall_percents = value.get<std::vector<int>>();
      } else if (key == "color_intervals") {
        for (const auto& [name, range] : value.items()) {
          auto m = ParseMeasure(name);
          if (!m) throw InvalidArgument("unknown measure '" + name + "'");
          const auto bounds = range.get<std::vector<double>>();
          if (bounds.size() != 2) throw InvalidArgument("color interval needs [lower, upper]");
          c.color_intervals[*m] = {bounds[0], bounds[1]};
        }
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  c.Validate();
  return c;
}

json ConfigToJson(const EngineConfig& c) {
  json j;
  j["tau_p"] = c.scoring.persons.clustering.tau_p;
  j["persons"] = PersonModeName(c.scoring.persons);
  j["locations"] = c.scoring.locations.ToString();
  j["events"] = c.scoring.events.ToString();
  j["quantile_options"] = c.quantile_options;
  j["rng"] = c.rng_algorithm;
  j["recall_levels"] = c.recall_percents;
  json intervals = json::object();
  for (const auto& [m, interval] : c.color_intervals) {
    intervals[std::string(ToString(m))] = {interval.lower, interval.upper};
  }
  j["color_intervals"] = intervals;
  return j;
}

EngineConfig LoadEngineConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config " + path.string() + ": " + e.what());
  }
  return ConfigFromJson(j);
}

std::string PersonModeName(const PersonScoring& scoring) {
  return scoring.aggregator ? scoring.aggregator->ToString() : "cluster";
}

std::string MeasureFingerprint(const ScoringConfig& config, Measure m) {
  switch (m) {
    case Measure::kCmps:
      return "cmps:" + PersonModeName(config.persons) +
             (config.persons.aggregator
                  ? ""
                  : ":tau=" + Shortest(config.persons.clustering.tau_p));
    case Measure::kCmls:
      return "cmls:" + config.locations.ToString();
    case Measure::kCmes:
      return "cmes:" + config.events.ToString();
    case Measure::kCmcs:
      return "cmcs";
  }
  return "";
}

}  // namespace xmc
