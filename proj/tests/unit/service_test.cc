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

#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "test_util.h"
#include "xmc/core/errors.h"
#include "xmc/core/stats.h"
#include "xmc/eval/report.h"
#include "xmc/service/api.h"
#include "xmc/service/config.h"
#include "xmc/service/serialize.h"
#include "xmc/service/server.h"
#include "xmc/service/session.h"
#include "xmc/synth/synthetic_corpus.h"

namespace xmc {
namespace {

using nlohmann::json;

TEST(EngineConfigTest, DefaultsAndValidation) {
  const EngineConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.scoring.persons.clustering.tau_p, 0.65);
  EXPECT_FALSE(c.scoring.persons.aggregator.has_value());
  EXPECT_EQ(c.color_intervals.at(Measure::kCmps), (ColorInterval{0.45, 1.0}));
  EXPECT_EQ(c.color_intervals.at(Measure::kCmls), (ColorInterval{0.6, 1.0}));
  EXPECT_EQ(c.color_intervals.at(Measure::kCmes), (ColorInterval{0.7, 1.0}));

  EXPECT_THROW(ConfigFromJson({{"tau_p", 1.5}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"persons", "median"}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"rng", "pcg32"}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"color_intervals", {{"cmps", {0.9, 0.2}}}}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"bogus", 1}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"tau_p", "high"}}), InvalidArgument);
  EXPECT_THROW(ConfigFromJson({{"events", "q50"}}), InvalidArgument);
  EXPECT_NO_THROW(ConfigFromJson({{"events", "q50"}, {"quantile_options", {0.5}}}));
}

TEST(EngineConfigTest, JsonRoundTripAndFile) {
  EngineConfig c = ConfigFromJson({{"tau_p", 0.5}, {"persons", "q90"}, {"events", "q75"}});
  EXPECT_EQ(c.scoring.persons.aggregator, Aggregator::Quantile(0.9));
  EXPECT_EQ(ConfigFromJson(ConfigToJson(c)), c);

  testing::TempDir dir;
  std::ofstream(dir / "c.json") << R"({"locations": "q95"})";
  EXPECT_EQ(LoadEngineConfig(dir / "c.json").scoring.locations, Aggregator::Quantile(0.95));
  EXPECT_THROW(LoadEngineConfig(dir / "missing.json"), IoError);
}

TEST(EngineConfigTest, FingerprintTracksOnlyRelevantSettings) {
  ScoringConfig a, b;
  b.persons.clustering.tau_p = 0.7;
  EXPECT_NE(MeasureFingerprint(a, Measure::kCmps), MeasureFingerprint(b, Measure::kCmps));
  EXPECT_EQ(MeasureFingerprint(a, Measure::kCmls), MeasureFingerprint(b, Measure::kCmls));
  // tau_p is irrelevant once persons use an aggregator.
  a.persons.aggregator = b.persons.aggregator = Aggregator::Max();
  EXPECT_EQ(MeasureFingerprint(a, Measure::kCmps), MeasureFingerprint(b, Measure::kCmps));
}

class ApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SynthOptions o = SynthOptions::Overlapping();
    o.documents = 40;
    corpus_ = std::make_shared<const Corpus>(GenerateSyntheticCorpus(o));
    session_.LoadCorpus(corpus_);
  }

  ApiResponse Get(const std::string& path, std::map<std::string, std::string> query = {}) {
    return api_.Handle({"GET", path, std::move(query), ""});
  }
  ApiResponse Post(const std::string& path, const json& body) {
    return api_.Handle({"POST", path, {}, body.dump()});
  }
  static json Body(const ApiResponse& r) { return json::parse(r.body); }

  std::shared_ptr<const Corpus> corpus_;
  ApiSession session_;
  Api api_{session_};
};

TEST_F(ApiTest, NoCorpusIsConflict) {
  ApiSession empty;
  Api api(empty);
  EXPECT_EQ(api.Handle({"GET", "/corpus/stats", {}, ""}).status, 409);
  EXPECT_EQ(api.Handle({"GET", "/documents/D00001/scores", {}, ""}).status, 409);
  EXPECT_EQ(api.Handle({"POST", "/evaluate", {}, R"({"type":"person","strategy":"random","seed":1})"}).status, 409);
  EXPECT_EQ(api.Handle({"GET", "/health", {}, ""}).status, 200);
}

TEST_F(ApiTest, Stats) {
  const ApiResponse r = Get("/corpus/stats");
  ASSERT_EQ(r.status, 200);
  const CorpusStats s = ComputeCorpusStats(*corpus_);
  EXPECT_EQ(Body(r)["documents"]["persons"], s.of(EntityType::kPerson).documents);
  EXPECT_EQ(Body(r)["documents"]["context"], 40);
}

TEST_F(ApiTest, ErrorStatuses) {
  EXPECT_EQ(Get("/documents/nope/scores").status, 404);
  EXPECT_EQ(Get("/nowhere").status, 404);
  EXPECT_EQ(Get("/rank", {{"testset", "missing"}}).status, 404);
  EXPECT_EQ(Get("/documents/D00000/scores", {{"config", R"({"tau_p": 3})"}}).status, 422);
  EXPECT_EQ(Get("/documents/D00000/scores", {{"config", R"({"events": "median"})"}}).status, 422);
  EXPECT_EQ(Get("/documents/D00000/scores", {{"config", "{oops"}}).status, 400);
  EXPECT_EQ(api_.Handle({"POST", "/score", {}, "not json"}).status, 400);
  EXPECT_EQ(Post("/score", {{"doc_id", "nope"}}).status, 404);
  EXPECT_EQ(Post("/evaluate", {{"type", "person"}, {"strategy", "random"}}).status, 422);
  EXPECT_EQ(Post("/evaluate", {{"type", "person"}, {"strategy", "esp"}, {"seed", 1}}).status, 422);
  EXPECT_EQ(Post("/evaluate", {{"type", "person"}, {"strategy", "random"}, {"seed", -4}}).status, 422);
  EXPECT_EQ(Get("/rank", {{"type", "event"}, {"page_size", "0"}}).status, 422);
  EXPECT_EQ(Get("/rank", {{"type", "event"}, {"order", "up"}}).status, 422);
  EXPECT_EQ(Get("/rank").status, 422);
}

TEST_F(ApiTest, ScoresMatchLibrary) {
  const std::string id = corpus_->documents()[3].id;
  const json got = Body(Get("/documents/" + id + "/scores"));
  const ScoredDocument want = ScoreDocument(corpus_->document(id), *corpus_, {});
  for (Measure m : kMeasures) {
    EXPECT_EQ(got["measures"][std::string(ToString(m))]["value"].get<double>(), *want.measure(m).value);
  }
}

TEST_F(ApiTest, DetailHasFourBreakdownsAndIntervals) {
  const json d = Body(Get("/documents/" + corpus_->documents()[0].id + "/detail"));
  EXPECT_FALSE(d["persons"]["faces"].empty());
  EXPECT_FALSE(d["locations"]["entities"].empty());
  EXPECT_FALSE(d["events"]["entities"].empty());
  EXPECT_FALSE(d["context"]["nouns"].empty());
  EXPECT_EQ(d["color_intervals"]["cmps"], json({0.45, 1.0}));
  EXPECT_EQ(d["color_intervals"]["cmes"], json({0.7, 1.0}));
}

TEST_F(ApiTest, QuantileOneEqualsMax) {
  for (const Document& doc : corpus_->documents()) {
    const json a = Body(Post("/score", {{"doc_id", doc.id}, {"config", {{"persons", "max"}, {"locations", "max"}, {"events", "max"}}}}));
    const json b = Body(Post("/score", {{"doc_id", doc.id}, {"config", {{"persons", "quantile:1"}, {"locations", "quantile:1"}, {"events", "quantile:1"}, {"quantile_options", {1.0}}}}}));
    EXPECT_EQ(a["measures"], b["measures"]);
    EXPECT_EQ(a["persons"]["faces"], b["persons"]["faces"]);
  }
}

TEST_F(ApiTest, ExcludingArgmaxFallsToSecondRow) {
  int checked = 0;
  for (const Document& doc : corpus_->documents()) {
    const json full = Body(Post("/score", {{"doc_id", doc.id}}));
    const auto& rows = full["events"]["entities"];
    if (rows.size() < 2) continue;
    std::vector<std::pair<double, std::string>> v;
    for (const auto& r : rows) v.push_back({r["similarity"], r["entity_id"]});
    std::sort(v.rbegin(), v.rend());
    const json cut = Body(Post("/score", {{"doc_id", doc.id}, {"exclude", {v[0].second}}}));
    EXPECT_EQ(cut["measures"]["cmes"]["value"].get<double>(), v[1].first);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST_F(ApiTest, WhatIfRecomputesOnlyChangedMeasures) {
  const std::string id = corpus_->documents()[5].id;
  Get("/documents/" + id + "/scores");
  const std::size_t base = session_.measure_computations();
  EXPECT_EQ(base, 4u);
  Get("/documents/" + id + "/detail");
  EXPECT_EQ(session_.measure_computations(), base);
  Get("/documents/" + id + "/scores", {{"config", R"({"tau_p": 0.8})"}});
  EXPECT_EQ(session_.measure_computations(), base + 1);
  Get("/documents/" + id + "/scores", {{"config", R"({"tau_p": 0.8, "locations": "q90"})"}});
  EXPECT_EQ(session_.measure_computations(), base + 2);
}

TEST_F(ApiTest, EvaluateIsDeterministicAndMatchesLibrary) {
  const json req = {{"type", "event"}, {"strategy", "esp"}, {"seed", 7}, {"subset", "top50"}};
  const ApiResponse a = Post("/evaluate", req);
  ASSERT_EQ(a.status, 200) << a.body;
  EXPECT_EQ(Post("/evaluate", req).body, a.body);

  EvaluationConfig cfg;
  cfg.top_fraction = 0.5;
  const EvaluationReport want = CollectionRetrieval(*corpus_, Tamper(*corpus_, EventSameParent{}, 7), cfg);
  json body = Body(a);
  EXPECT_EQ(body["testset"], "event:esp:7");
  body.erase("testset");
  EXPECT_EQ(ReportFromJson(body.dump()), want);
}

TEST_F(ApiTest, RankPageWalkCoversEveryVariantOnce) {
  ASSERT_EQ(Post("/evaluate", {{"type", "person"}, {"strategy", "random"}, {"seed", 3}}).status, 200);
  std::multiset<std::pair<std::string, std::string>> seen;
  std::size_t total = 0;
  double last = 2.0;
  for (std::size_t page = 1;; ++page) {
    const ApiResponse r = Get("/rank", {{"testset", "person:random:3"}, {"page", std::to_string(page)}, {"page_size", "7"}});
    ASSERT_EQ(r.status, 200);
    const json j = Body(r);
    total = j["total"];
    if (j["entries"].empty()) break;
    for (const auto& e : j["entries"]) {
      seen.insert({e["doc_id"].get<std::string>(), e["variant"].get<std::string>()});
      EXPECT_LE(e["score"].get<double>(), last);
      last = e["score"];
    }
  }
  const std::size_t docs = Body(Get("/corpus/stats"))["documents"]["persons"];
  EXPECT_EQ(total, 2 * docs);
  EXPECT_EQ(seen.size(), 2 * docs);
  EXPECT_EQ((std::set<std::pair<std::string, std::string>>(seen.begin(), seen.end()).size()), 2 * docs);
}

TEST_F(ApiTest, RankDefaultsAndAscendingOrder) {
  const json j = Body(Get("/rank", {{"type", "event"}, {"order", "asc"}}));
  EXPECT_EQ(j["page_size"], kDefaultPageSize);
  EXPECT_EQ(j["total"], 40);
  double last = -2.0;
  for (const auto& e : j["entries"]) {
    EXPECT_GE(e["score"].get<double>(), last);
    last = e["score"];
  }
}

TEST_F(ApiTest, ConcurrentRequestsMatchSerialResponses) {
  std::vector<ApiRequest> requests;
  for (std::size_t i = 0; i < 12; ++i) {
    const std::string id = corpus_->documents()[i].id;
    requests.push_back({"GET", "/documents/" + id + "/detail", {}, ""});
    requests.push_back({"GET", "/documents/" + id + "/scores", {{"config", R"({"tau_p": 0.5})"}}, ""});
    requests.push_back({"POST", "/score", {}, json{{"doc_id", id}, {"config", {{"events", "q75"}}}}.dump()});
  }
  requests.push_back({"POST", "/evaluate", {}, R"({"type":"location","strategy":"random","seed":5})"});
  requests.push_back({"GET", "/rank", {{"type", "context"}}, ""});

  ApiSession fresh;
  fresh.LoadCorpus(corpus_);
  Api serial_api(fresh);
  std::vector<std::string> serial;
  for (const auto& r : requests) serial.push_back(serial_api.Handle(r).body);

  std::vector<std::future<std::string>> futures;
  for (int rep = 0; rep < 3; ++rep) {
    for (const auto& r : requests) {
      futures.push_back(std::async(std::launch::async, [&, r] { return api_.Handle(r).body; }));
    }
  }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    EXPECT_EQ(futures[i].get(), serial[i % requests.size()]);
  }
}

TEST(ServerTest, ServesOverHttp) {
  SynthOptions o;
  o.documents = 10;
  ApiSession session;
  session.LoadCorpus(std::make_shared<const Corpus>(GenerateSyntheticCorpus(o)));
  ApiServer server(session);
  const int port = server.Bind("127.0.0.1", 0);
  std::thread t([&] { server.Listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(10, 0);
  auto stats = client.Get("/corpus/stats");
  ASSERT_TRUE(stats);
  EXPECT_EQ(stats->status, 200);
  EXPECT_EQ(json::parse(stats->body)["documents"]["context"], 10);

  auto scores = client.Get("/documents/D00002/scores?config=%7B%22tau_p%22%3A0.5%7D");
  ASSERT_TRUE(scores);
  EXPECT_EQ(scores->status, 200);

  auto missing = client.Post("/score", R"({"doc_id": "zzz"})", "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.Stop();
  t.join();
}

TEST(ServerTest, PortFromEnvironment) {
  ::unsetenv(kPortEnvironmentVariable);
  EXPECT_EQ(PortFromEnvironment(), kDefaultPort);
  ::setenv(kPortEnvironmentVariable, "9123", 1);
  EXPECT_EQ(PortFromEnvironment(), 9123);
  ::setenv(kPortEnvironmentVariable, "http", 1);
  EXPECT_THROW(PortFromEnvironment(), InvalidArgument);
  ::unsetenv(kPortEnvironmentVariable);
}

}  // namespace
}  // namespace xmc
