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

#ifndef XMC_SERVICE_CONFIG_H_
#define XMC_SERVICE_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "xmc/simeng/measures.h"

namespace xmc {

// Display range for a measure: values at or below `lower` render fully red,
// 1.0 fully green.
struct ColorInterval {
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const ColorInterval&, const ColorInterval&) = default;
};

struct EngineConfig {
  ScoringConfig scoring;
  std::vector<double> quantile_options = {0.75, 0.90, 0.95};
  std::string rng_algorithm = "mt19937_64";
  std::vector<int> recall_percents = {25, 50, 100};
  std::map<Measure, ColorInterval> color_intervals = {
      {Measure::kCmps, {0.45, 1.0}},
      {Measure::kCmls, {0.60, 1.0}},
      {Measure::kCmes, {0.70, 1.0}},
  };

  // Throws InvalidArgument on out-of-range thresholds, unknown generator,
  // or an interval with lower >= upper.
  void Validate() const;

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

// JSON form:
//   {"tau_p": 0.65, "persons": "cluster" | "max" | "q90" | ...,
//    "locations": "max", "events": "max",
//    "quantile_options": [0.75, 0.9, 0.95], "rng": "mt19937_64",
//    "recall_levels": [25, 50, 100],
//    "color_intervals": {"cmps": [0.45, 1], ...}}
// Every key is optional; missing keys keep the value from `base`.
EngineConfig ConfigFromJson(const nlohmann::json& j, const EngineConfig& base = {});
nlohmann::json ConfigToJson(const EngineConfig& config);
// Reads a JSON config file; throws IoError or InvalidArgument.
EngineConfig LoadEngineConfig(const std::filesystem::path& path);

// "cluster" when persons use the majority-cluster reference, else the
// aggregator name.
std::string PersonModeName(const PersonScoring& scoring);

// Canonical string of every setting that influences measure `m`. Two
// configurations with equal fingerprints produce identical values for `m`.
std::string MeasureFingerprint(const ScoringConfig& config, Measure m);

}  // namespace xmc

#endif  // XMC_SERVICE_CONFIG_H_
