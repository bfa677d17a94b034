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

#include "xmc/service/api.h"

#include <algorithm>
#include <charconv>

#include "json.hpp"
#include "xmc/core/errors.h"
#include "xmc/core/stats.h"
#include "xmc/eval/report.h"
#include "xmc/service/serialize.h"

namespace xmc {
namespace {

using nlohmann::json;

// Thrown inside the router and turned into an error response.
struct HttpError {
  int status;
  std::string message;
};

ApiResponse Json(const json& body, int status = 200) {
  return {status, body.dump()};
}

ApiResponse ErrorResponse(int status, const std::string& message) {
  return Json({{"error", message}}, status);
}

json ParseBody(const std::string& text) {
  if (text.empty()) return json::object();
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw HttpError{400, std::string("malformed JSON: ") + e.what()};
  }
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    if (j > i) parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::size_t ParseCount(const std::string& name, const std::string& text) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw HttpError{422, name + " must be a non-negative integer"};
  }
  return v;
}

EngineConfig ConfigOverride(const EngineConfig& base, const json& overrides) {
  try {
    return ConfigFromJson(overrides, base);
  } catch (const Error& e) {
    throw HttpError{422, e.what()};
  }
}

EngineConfig ConfigFromQuery(const EngineConfig& base,
                             const std::map<std::string, std::string>& query) {
  auto it = query.find("config");
  if (it == query.end()) return base;
  json overrides;
  try {
    overrides = json::parse(it->second);
  } catch (const json::parse_error& e) {
    throw HttpError{400, std::string("malformed config JSON: ") + e.what()};
  }
  return ConfigOverride(base, overrides);
}

std::shared_ptr<const Corpus> RequireCorpus(const ApiSession& session) {
  auto corpus = session.corpus();
  if (!corpus) throw HttpError{409, "no corpus loaded"};
  return corpus;
}

const Document& RequireDocument(const Corpus& corpus, const std::string& id) {
  const Document* doc = corpus.FindDocument(id);
  if (!doc) throw HttpError{404, "unknown document '" + id + "'"};
  return *doc;
}

template <typename T>
T Field(const json& body, const char* key) {
  try {
    return body.at(key).get<T>();
  } catch (const json::exception&) {
    throw HttpError{422, std::string("field '") + key + "' is missing or has the wrong type"};
  }
}

}  // namespace

ApiResponse Api::Handle(const ApiRequest& request) {
  try {
    return Route(request);
  } catch (const HttpError& e) {
    return ErrorResponse(e.status, e.message);
  } catch (const Error& e) {
    return ErrorResponse(422, e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, e.what());
  }
}

ApiResponse Api::Route(const ApiRequest& request) {
  const std::vector<std::string> parts = SplitPath(request.path);
  const bool get = request.method == "GET";
  const bool post = request.method == "POST";

  if (get && parts == std::vector<std::string>{"health"}) {
    return Json({{"status", "ok"}, {"corpus_loaded", session_.corpus() != nullptr}});
  }

  if (get && parts == std::vector<std::string>{"corpus", "stats"}) {
    auto corpus = RequireCorpus(session_);
    json j = StatsToJson(ComputeCorpusStats(*corpus));
    j["corpus_id"] = corpus->id();
    return Json(j);
  }

  if (get && parts == std::vector<std::string>{"testsets"}) {
    RequireCorpus(session_);
    json list = json::array();
    for (const auto& name : session_.TestSetNames()) {
      auto ts = session_.FindTestSet(name);
      list.push_back({{"name", name},
                      {"target", std::string(ToString(ts->target()))},
                      {"strategy", StrategyName(ts->strategy)},
                      {"seed", ts->seed},
                      {"documents", ts->doc_ids().size()}});
    }
    return Json({{"testsets", list}});
  }

  if (get && parts.size() == 3 && parts[0] == "documents" &&
      (parts[2] == "scores" || parts[2] == "detail")) {
    auto corpus = RequireCorpus(session_);
    RequireDocument(*corpus, parts[1]);
    const EngineConfig config = ConfigFromQuery(session_.config(), request.query);
    ScoredDocument scored = session_.Score(parts[1], config.scoring);
    if (parts[2] == "scores") return Json(ScoresToJson(scored));
    return Json(ScoredDetailToJson(scored, *corpus, config));
  }

  if (get && parts == std::vector<std::string>{"rank"}) {
    auto corpus = RequireCorpus(session_);
    const auto& q = request.query;
    const EngineConfig config = ConfigFromQuery(session_.config(), q);

    std::shared_ptr<const TamperedTestSet> testset;
    if (auto it = q.find("testset"); it != q.end()) {
      testset = session_.FindTestSet(it->second);
      if (!testset) throw HttpError{404, "unknown test set '" + it->second + "'"};
    }
    std::optional<Measure> measure;
    if (auto it = q.find("type"); it != q.end()) {
      measure = ParseMeasure(it->second);
      if (!measure) throw HttpError{422, "unknown type '" + it->second + "'"};
    }
    if (testset) {
      const Measure own = MeasureFor(testset->target());
      if (measure && *measure != own) {
        throw HttpError{422, "type does not match the test set's target"};
      }
      measure = own;
    }
    if (!measure) throw HttpError{422, "type or testset is required"};

    RankOrder order = RankOrder::kDescending;
    if (auto it = q.find("order"); it != q.end()) {
      if (it->second == "asc") {
        order = RankOrder::kAscending;
      } else if (it->second != "desc") {
        throw HttpError{422, "order must be asc or desc"};
      }
    }
    std::size_t page = 1;
    std::size_t page_size = kDefaultPageSize;
    if (auto it = q.find("page"); it != q.end()) page = ParseCount("page", it->second);
    if (auto it = q.find("page_size"); it != q.end()) {
      page_size = ParseCount("page_size", it->second);
    }
    if (page < 1) throw HttpError{422, "page starts at 1"};
    if (page_size < 1 || page_size > kMaxPageSize) {
      throw HttpError{422, "page_size must be in [1, " + std::to_string(kMaxPageSize) + "]"};
    }

    std::vector<RankedEntry> entries;
    if (testset) {
      auto pairs = session_.Pairs(q.at("testset"), config.scoring);
      entries = RankPairs(*pairs, order).entries();
    } else {
      auto scorer = session_.ScorerFor(config.scoring);
      const auto& docs = corpus->documents();
      const auto values = scorer->ScoreAll(docs, *measure);
      std::vector<RankedEntry> clean;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        if (values[i].present()) clean.push_back({docs[i].id, Variant::kClean, *values[i].value});
      }
      entries = RankedCollection(std::move(clean), order).entries();
    }

    json rows = json::array();
    const std::size_t begin = std::min(entries.size(), (page - 1) * page_size);
    const std::size_t end = std::min(entries.size(), begin + page_size);
    for (std::size_t i = begin; i < end; ++i) {
      rows.push_back({{"rank", i + 1},
                      {"doc_id", entries[i].doc_id},
                      {"variant", std::string(ToString(entries[i].variant))},
                      {"score", entries[i].score}});
    }
    return Json({{"measure", std::string(ToString(*measure))},
                 {"order", std::string(ToString(order))},
                 {"testset", testset ? json(q.at("testset")) : json(nullptr)},
                 {"total", entries.size()},
                 {"page", page},
                 {"page_size", page_size},
                 {"entries", rows}});
  }

  if (post && parts == std::vector<std::string>{"score"}) {
    const json body = ParseBody(request.body);
    auto corpus = RequireCorpus(session_);
    const auto doc_id = Field<std::string>(body, "doc_id");
    const Document& doc = RequireDocument(*corpus, doc_id);
    const EngineConfig config =
        body.contains("config") ? ConfigOverride(session_.config(), body["config"])
                                : session_.config();
    std::vector<std::string> exclude;
    if (body.contains("exclude")) exclude = Field<std::vector<std::string>>(body, "exclude");

    ScoredDocument scored;
    if (exclude.empty()) {
      scored = session_.Score(doc_id, config.scoring);
    } else {
      Document edited = doc;
      for (auto& mentions : edited.mentions) {
        std::erase_if(mentions, [&](const std::string& id) {
          return std::find(exclude.begin(), exclude.end(), id) != exclude.end();
        });
      }
      scored = session_.ScoreUncached(edited, config.scoring);
    }
    return Json(ScoredDetailToJson(scored, *corpus, config));
  }

  if (post && parts == std::vector<std::string>{"evaluate"}) {
    const json body = ParseBody(request.body);
    auto corpus = RequireCorpus(session_);
    const auto type = Field<std::string>(body, "type");
    const auto target = ParseTamperTarget(type);
    if (!target) throw HttpError{422, "unknown type '" + type + "'"};
    const auto name = Field<std::string>(body, "strategy");
    const auto strategy = ParseStrategy(*target, name);
    if (!strategy) throw HttpError{422, "unknown strategy '" + name + "' for " + type};
    if (!body.contains("seed")) throw HttpError{422, "seed is required"};
    if (!body["seed"].is_number_unsigned()) {
      throw HttpError{422, "seed must be a non-negative integer"};
    }
    const auto seed = Field<std::uint64_t>(body, "seed");

    const EngineConfig config =
        body.contains("config") ? ConfigOverride(session_.config(), body["config"])
                                : session_.config();
    EvaluationConfig eval;
    eval.scoring = config.scoring;
    eval.recall_percents = config.recall_percents;
    eval.threads = session_.threads();
    if (body.contains("subset")) {
      const auto subset = ParseSubset(Field<std::string>(body, "subset"));
      if (!subset) throw HttpError{422, "subset must be all, top25 or top50"};
      eval.top_fraction = *subset;
    }
    if (body.contains("scene_kind")) {
      eval.scene_kind = ParseSceneKind(Field<std::string>(body, "scene_kind"));
      if (!eval.scene_kind) throw HttpError{422, "scene_kind must be indoor or outdoor"};
    }
    if (body.contains("ap_mode")) {
      const auto mode = Field<std::string>(body, "ap_mode");
      if (mode == "literal") {
        eval.ap_mode = ApMode::kLiteral;
      } else if (mode != "standard") {
        throw HttpError{422, "ap_mode must be standard or literal"};
      }
    }

    const std::string testset_name = std::string(ToString(*target)) + ":" +
                                     StrategyName(*strategy) + ":" +
                                     std::to_string(seed);
    auto testset = session_.FindTestSet(testset_name);
    if (!testset) {
      session_.AddTestSet(testset_name, Tamper(*corpus, *strategy, seed));
      testset = session_.FindTestSet(testset_name);
    }
    auto scorer = session_.ScorerFor(eval.scoring);
    const EvaluationReport report = CollectionRetrieval(*scorer, *testset, eval);
    json j = json::parse(ReportToJson(report));
    j["testset"] = testset_name;
    return Json(j);
  }

  throw HttpError{404, "no route for " + request.method + " " + request.path};
}

}  // namespace xmc
