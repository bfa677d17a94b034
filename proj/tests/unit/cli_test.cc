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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "xmc/core/blob.h"
#include "xmc/core/manifest.h"
#include "xmc/eval/report.h"
#include "xmc/service/cli.h"

namespace xmc {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunXmc(std::vector<std::string> args) {
  args.insert(args.begin(), "xmc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, StatsOnOneDocumentCorpus) {
  testing::TempDir dir;
  const Corpus c("one", {testing::Person("Q1", "f", {}, testing::Refs({testing::Emb({1, 0})}))},
                 {testing::Doc("d1", {"Q1"})}, {});
  WriteManifest(c, dir.path());
  const Result r = RunXmc({"stats", dir.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("|D|"), std::string::npos);
  EXPECT_NE(r.out.find("T*"), std::string::npos);
  EXPECT_NE(r.out.find("persons"), std::string::npos);
  EXPECT_NE(r.out.find("1.00"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(RunXmc({}).code, kExitUsageError);
  EXPECT_EQ(RunXmc({"frobnicate"}).code, kExitUsageError);
  EXPECT_EQ(RunXmc({"evaluate", "--type", "person", "--strategy", "random"}).code, kExitUsageError);
  EXPECT_EQ(RunXmc({"tamper", "--type", "person", "--strategy", "random", "--out", "x.json"}).code,
            kExitUsageError);
  EXPECT_EQ(RunXmc({"tamper", "--type", "person", "--strategy", "esp", "--seed", "1", "--out", "x.json"}).code,
            kExitUsageError);
  EXPECT_EQ(RunXmc({"synth", "--out", "x"}).code, kExitUsageError);
  EXPECT_EQ(RunXmc({"--help"}).code, kExitOk);
}

TEST(CliTest, DataErrors) {
  testing::TempDir dir;
  const Result missing = RunXmc({"stats", (dir / "nothing").string()});
  EXPECT_EQ(missing.code, kExitDataError);
  EXPECT_NE(missing.err.find("error"), std::string::npos);
  std::ofstream(dir / "manifest.json") << "{\"corpus_id\": 3}";
  EXPECT_EQ(RunXmc({"stats", dir.path().string()}).code, kExitDataError);
}

TEST(CliTest, PipelineIsDeterministicAndMatchesLibrary) {
  testing::TempDir dir;
  const std::string raw = (dir / "raw").string(), corpus = (dir / "corpus").string();
  ASSERT_EQ(RunXmc({"synth", "--preset", "overlapping", "--seed", "4", "--documents", "60", "--out", raw}).code, 0);

  std::vector<std::string> reports;
  for (int rep = 0; rep < 2; ++rep) {
    const std::string suffix = std::to_string(rep);
    ASSERT_EQ(RunXmc({"ingest", raw, "--out", corpus + suffix}).code, 0);
    const std::string ts = (dir / ("t" + suffix + ".json")).string();
    const std::string report = (dir / ("r" + suffix + ".json")).string();
    Result t = RunXmc({"tamper", "--corpus", corpus + suffix, "--type", "location", "--strategy", "gcd:25:200",
                    "--seed", "42", "--out", ts});
    ASSERT_EQ(t.code, 0) << t.err;
    Result e = RunXmc({"evaluate", "--corpus", corpus + suffix, "--testset", ts, "--subset", "top50", "--out",
                    report, "--csv", report + ".csv"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NE(e.out.find("Locations: GCD(25, 200)"), std::string::npos);
    reports.push_back(ReadTextFile(report));
  }
  EXPECT_EQ(reports[0], reports[1]);

  const Corpus lib = LoadManifest(raw);
  EvaluationConfig cfg;
  cfg.top_fraction = 0.5;
  const EvaluationReport want = CollectionRetrieval(lib, Tamper(lib, LocationGcdBand{25, 200}, 42), cfg);
  EXPECT_EQ(reports[0], ReportToJson(want));

  // Tampering on the fly gives the same report.
  const std::string fly = (dir / "fly.json").string();
  ASSERT_EQ(RunXmc({"evaluate", "--corpus", raw, "--type", "location", "--strategy", "gcd:25:200", "--seed", "42",
                 "--subset", "top50", "--out", fly})
                .code,
            0);
  EXPECT_EQ(ReadTextFile(fly), reports[0]);
}

TEST(CliTest, ScoreAndRank) {
  testing::TempDir dir;
  const std::string c = (dir / "c").string();
  ASSERT_EQ(RunXmc({"synth", "--seed", "2", "--documents", "12", "--out", c}).code, 0);
  const Result s = RunXmc({"score", c, "--doc", "D00003"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("\"D00003\""), std::string::npos);
  EXPECT_EQ(RunXmc({"score", c, "--doc", "nope"}).code, kExitDataError);

  const Result r = RunXmc({"rank", "--corpus", c, "--type", "event", "--top", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_EQ(RunXmc({"rank", "--corpus", c}).code, kExitUsageError);
}

TEST(CliTest, IngestFilters) {
  testing::TempDir dir;
  const std::string c = (dir / "c").string(), f = (dir / "f").string();
  ASSERT_EQ(RunXmc({"synth", "--seed", "2", "--documents", "30", "--out", c}).code, 0);
  const Result r = RunXmc({"ingest", c, "--min-person-docs", "2", "--out", f});
  ASSERT_EQ(r.code, 0) << r.err;
  const Corpus filtered = LoadManifest(f);
  for (const Document& d : filtered.documents()) {
    for (const auto& id : d.mentions_of(EntityType::kPerson)) EXPECT_NE(filtered.FindEntity(id), nullptr);
  }
}

}  // namespace
}  // namespace xmc
