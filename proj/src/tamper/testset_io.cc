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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "xmc/core/errors.h"
#include "xmc/tamper/tamper.h"

namespace xmc {
namespace {

using nlohmann::json;

constexpr char kTestSetFormat[] = "xmc-testset";
constexpr int kTestSetVersion = 1;

}  // namespace

std::string TestSetToJson(const TamperedTestSet& t) {
  json root;
  root["format"] = kTestSetFormat;
  root["version"] = kTestSetVersion;
  root["corpus_id"] = t.corpus_id;
  root["target"] = ToString(t.target());
  root["strategy"] = StrategyName(t.strategy);
  root["strategy_label"] = StrategyLabel(t.strategy);
  root["seed"] = t.seed;
  root["rng"] = t.rng_algorithm;
  root["substitutions"] = t.entity_substitutions;
  root["image_substitutions"] = t.image_substitutions;
  json fallback = json::array();
  for (const FallbackRecord& f : t.fallback_log) {
    fallback.push_back({{"doc_id", f.doc_id},
                        {"original", f.original},
                        {"replacement", f.replacement},
                        {"satisfied", f.satisfied},
                        {"constraints", f.constraints}});
  }
  root["fallback_log"] = fallback;
  json dropped = json::array();
  for (const DroppedDocument& d : t.dropped) {
    dropped.push_back({{"doc_id", d.doc_id}, {"reason", d.reason}});
  }
  root["dropped"] = dropped;
  return root.dump(2) + "\n";
}

TamperedTestSet TestSetFromJson(const std::string& text) {
  try {
    const json root = json::parse(text);
    if (root.value("format", "") != kTestSetFormat) {
      throw InvalidArgument("not a test-set file");
    }
    if (root.at("version").get<int>() != kTestSetVersion) {
      throw InvalidArgument("unsupported test-set version");
    }
    TamperedTestSet t;
    t.corpus_id = root.at("corpus_id").get<std::string>();
    const std::string target_name = root.at("target").get<std::string>();
    const auto target = ParseTamperTarget(target_name);
    if (!target) throw InvalidArgument("unknown target '" + target_name + "'");
    const std::string strategy_name = root.at("strategy").get<std::string>();
    auto strategy = ParseStrategy(*target, strategy_name);
    if (!strategy) throw InvalidArgument("unknown strategy '" + strategy_name + "'");
    t.strategy = *strategy;
    t.seed = root.at("seed").get<std::uint64_t>();
    t.rng_algorithm = root.at("rng").get<std::string>();
    if (t.rng_algorithm != kRngAlgorithm) {
      throw InvalidArgument("test set was drawn with unsupported generator '" +
                            t.rng_algorithm + "'");
    }
    t.entity_substitutions =
        root.at("substitutions").get<std::map<std::string, std::map<std::string, std::string>>>();
    t.image_substitutions =
        root.at("image_substitutions").get<std::map<std::string, std::string>>();
    for (const json& f : root.at("fallback_log")) {
      t.fallback_log.push_back({f.at("doc_id").get<std::string>(),
                                f.at("original").get<std::string>(),
                                f.at("replacement").get<std::string>(),
                                f.at("satisfied").get<std::size_t>(),
                                f.at("constraints").get<std::size_t>()});
    }
    for (const json& d : root.at("dropped")) {
      t.dropped.push_back({d.at("doc_id").get<std::string>(), d.at("reason").get<std::string>()});
    }
    return t;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed test set: ") + e.what());
  }
}

void WriteTestSet(const TamperedTestSet& testset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << TestSetToJson(testset);
  if (!out) throw IoError("write failed: " + path.string());
}

TamperedTestSet ReadTestSet(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return TestSetFromJson(buf.str());
}

}  // namespace xmc
