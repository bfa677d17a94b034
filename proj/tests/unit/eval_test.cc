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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.h"
#include "test_util.h"
#include "xmc/core/errors.h"
#include "xmc/eval/metrics.h"
#include "xmc/eval/report.h"
#include "xmc/eval/retrieval.h"
#include "xmc/synth/synthetic_corpus.h"

namespace xmc {
namespace {

// Ranking with strictly decreasing scores following `labels`
// ('C' = clean, 'T' = tampered).
RankedCollection Ranking(const std::string& labels) {
  std::vector<RankedEntry> e;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    e.push_back({"d" + std::to_string(i), labels[i] == 'C' ? Variant::kClean : Variant::kTampered,
                 1.0 - 0.01 * static_cast<double>(i)});
  }
  return RankedCollection(e, RankOrder::kDescending);
}

TEST(VerificationAccuracyTest, StrictRule) {
  const ScorePair one[] = {{0.9, 0.3}};
  EXPECT_EQ(VerificationAccuracy(one), 1.0);
  const ScorePair tie[] = {{0.5, 0.5}};
  EXPECT_EQ(VerificationAccuracy(tie), 0.0);
  EXPECT_THROW(VerificationAccuracy({}), EmptyInput);

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(0, 5);
  std::vector<ScorePair> pairs(100);
  int wins = 0;
  for (auto& p : pairs) {
    p = {u(rng) / 5.0, u(rng) / 5.0};
    wins += p.clean > p.tampered;
  }
  EXPECT_DOUBLE_EQ(VerificationAccuracy(pairs), wins / 100.0);
}

TEST(RocAucTest, Examples) {
  EXPECT_EQ(RocAuc(std::vector<double>{0.9, 0.8}, std::vector<double>{0.7, 0.6}), 1.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.9, 0.5}, std::vector<double>{0.7, 0.6}), 0.5);
  EXPECT_EQ(RocAuc(std::vector<double>{0.4, 0.4, 0.4}, std::vector<double>{0.4, 0.4}), 0.5);
  EXPECT_THROW(RocAuc(std::vector<double>{}, std::vector<double>{1.0}), EmptyInput);
}

TEST(RocAucTest, MatchesPairCountingWithTies) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> size(1, 40), level(0, 9);
    std::vector<double> c(size(rng)), t(size(rng));
    for (double& x : c) x = level(rng) / 9.0;
    for (double& x : t) x = level(rng) / 9.0;
    const double auc = RocAuc(c, t);
    EXPECT_NEAR(auc, oracle::Auc(c, t), 1e-12);
    EXPECT_NEAR(RocAuc(t, c), 1.0 - auc, 1e-12);
  }
}

TEST(ApAtRecallTest, Examples) {
  EXPECT_NEAR(ApAtRecall(Ranking("TCTT"), Variant::kTampered, 1.0), (1.0 + 2.0 / 3 + 3.0 / 4) / 3, 1e-12);
  EXPECT_NEAR(ApAtRecall(Ranking("TCTT"), Variant::kTampered, 1.0), 0.805556, 1e-6);
  EXPECT_EQ(ApAtRecall(Ranking("CT"), Variant::kTampered, 1.0), 0.5);
  EXPECT_EQ(ApAtRecall(Ranking("TTCC"), Variant::kTampered, 0.25), 1.0);
  EXPECT_EQ(ApAtRecall(Ranking("TTCC"), Variant::kTampered, 1.0), 1.0);
  EXPECT_THROW(ApAtRecall(Ranking("CC"), Variant::kTampered, 1.0), InsufficientRelevant);
  EXPECT_THROW(ApAtRecall(Ranking("CT"), Variant::kTampered, 0.0), InvalidArgument);
  EXPECT_THROW(ApAtRecall(Ranking("CT"), Variant::kTampered, 1.5), InvalidArgument);
}

TEST(ApAtRecallTest, ExhaustiveOverSmallLabelings) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::string labels;
      for (std::size_t i = 0; i < n; ++i) labels += (mask >> i) & 1 ? 'T' : 'C';
      const RankedCollection r = Ranking(labels);
      for (Variant v : {Variant::kClean, Variant::kTampered}) {
        std::vector<bool> rel;
        for (char ch : labels) rel.push_back((ch == 'T') == (v == Variant::kTampered));
        if (std::count(rel.begin(), rel.end(), true) == 0) continue;
        for (double rec : {0.25, 0.5, 1.0}) {
          EXPECT_NEAR(ApAtRecall(r, v, rec), oracle::Ap(rel, rec), 1e-9) << labels;
          EXPECT_NEAR(ApAtRecall(r, v, rec, ApMode::kLiteral), oracle::Ap(rel, rec, true), 1e-9) << labels;
        }
      }
    }
  }
}

TEST(RankedCollectionTest, TiesBreakByDocThenCleanFirst) {
  const RankedCollection r({{"b", Variant::kTampered, 0.5},
                            {"b", Variant::kClean, 0.5},
                            {"a", Variant::kTampered, 0.5},
                            {"c", Variant::kClean, 0.9}},
                           RankOrder::kDescending);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r.entries()[0].doc_id, "c");
  EXPECT_EQ(r.entries()[1].doc_id, "a");
  EXPECT_EQ(r.entries()[2].variant, Variant::kClean);
  EXPECT_EQ(r.entries()[3].variant, Variant::kTampered);
  EXPECT_EQ(r.count(Variant::kClean), 2u);

  const RankedCollection asc(r.entries(), RankOrder::kAscending);
  EXPECT_EQ(asc.entries()[3].doc_id, "c");
  EXPECT_EQ(asc.entries()[0].doc_id, "a");
}

TEST(TopKSubsetTest, CeilingAndPreconditions) {
  const std::vector<DocScore> four = {{"a", 0.9}, {"b", 0.7}, {"c", 0.5}, {"d", 0.3}};
  EXPECT_EQ(TopKSubset(four, 0.5), (std::set<std::string>{"a", "b"}));
  EXPECT_THROW(TopKSubset(four, 1.0), InvalidArgument);
  EXPECT_THROW(TopKSubset(four, 0.0), InvalidArgument);

  std::vector<DocScore> many;
  for (int i = 0; i < 101; ++i) many.push_back({"d" + std::to_string(i), i * 0.01});
  const auto top = TopKSubset(many, 0.25);
  EXPECT_EQ(top.size(), 26u);
  EXPECT_TRUE(top.count("d100"));
  EXPECT_FALSE(top.count("d74"));
  EXPECT_EQ(RelevantCutoff(0.07, 100), 7u);
}

Corpus SmallSynthetic(std::size_t docs, bool overlapping) {
  SynthOptions o = overlapping ? SynthOptions::Overlapping() : SynthOptions::Separable();
  o.documents = docs;
  return GenerateSyntheticCorpus(o);
}

TEST(CollectionRetrievalTest, SeparableCorpusIsPerfect) {
  const Corpus c = SmallSynthetic(60, false);
  const TamperedTestSet ts = Tamper(c, PersonRandom{}, 1);
  const EvaluationReport r = CollectionRetrieval(c, ts, {});
  EXPECT_EQ(r.va, 1.0);
  EXPECT_EQ(r.auc, 1.0);
  for (int pct : {25, 50, 100}) {
    EXPECT_EQ(r.ap_clean.at(pct), 1.0);
    EXPECT_EQ(r.ap_tampered.at(pct), 1.0);
  }
  EXPECT_EQ(r.TestSetTitle(), "Persons: Random");
}

TEST(CollectionRetrievalTest, MatchesStraightLineReimplementation) {
  const Corpus c = SmallSynthetic(50, true);
  const TamperedTestSet ts = Tamper(c, EventSameParent{}, 9);
  EvaluationConfig cfg;
  const EvaluationReport r = CollectionRetrieval(c, ts, cfg);

  std::vector<double> clean, tampered;
  std::vector<std::tuple<double, std::string, int>> ranked;  // score, doc, 0 clean / 1 tampered
  for (const std::string& id : ts.doc_ids()) {
    const Document& d = c.document(id);
    const auto a = oracle::EntityMeasure(d, c, EntityType::kEvent, 1.0);
    const auto b = oracle::EntityMeasure(ApplyTampering(c, ts, d), c, EntityType::kEvent, 1.0);
    if (!a || !b) continue;
    clean.push_back(*a);
    tampered.push_back(*b);
    ranked.emplace_back(*a, id, 0);
    ranked.emplace_back(*b, id, 1);
  }
  ASSERT_EQ(r.n_documents, clean.size());
  double wins = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) wins += clean[i] > tampered[i];
  EXPECT_NEAR(r.va, wins / clean.size(), 1e-9);
  EXPECT_NEAR(r.auc, oracle::Auc(clean, tampered), 1e-9);

  auto desc = ranked;
  std::sort(desc.begin(), desc.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::make_pair(std::get<1>(x), std::get<2>(x)) < std::make_pair(std::get<1>(y), std::get<2>(y));
  });
  auto asc = ranked;
  std::sort(asc.begin(), asc.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return std::make_pair(std::get<1>(x), std::get<2>(x)) < std::make_pair(std::get<1>(y), std::get<2>(y));
  });
  std::vector<bool> rel_clean, rel_tampered;
  for (const auto& e : desc) rel_clean.push_back(std::get<2>(e) == 0);
  for (const auto& e : asc) rel_tampered.push_back(std::get<2>(e) == 1);
  for (int pct : {25, 50, 100}) {
    EXPECT_NEAR(r.ap_clean.at(pct), oracle::Ap(rel_clean, pct / 100.0), 1e-9);
    EXPECT_NEAR(r.ap_tampered.at(pct), oracle::Ap(rel_tampered, pct / 100.0), 1e-9);
  }
}

TEST(CollectionRetrievalTest, SwappingVariantsMirrorsAuc) {
  const Corpus c = SmallSynthetic(60, true);
  const Scorer s(c, {});
  const auto pairs = EvaluationPairs(s, Tamper(c, PersonSameBoth{}, 2));
  std::vector<double> a, b;
  for (const auto& p : pairs) {
    a.push_back(p.clean);
    b.push_back(p.tampered);
  }
  EXPECT_NEAR(RocAuc(b, a), 1.0 - RocAuc(a, b), 1e-15);
}

TEST(CollectionRetrievalTest, SubsetAndCorpusMismatch) {
  const Corpus c = SmallSynthetic(40, true);
  const TamperedTestSet ts = Tamper(c, LocationRandom{}, 2);
  EvaluationConfig cfg;
  cfg.top_fraction = 0.25;
  EXPECT_EQ(CollectionRetrieval(c, ts, cfg).n_documents, 10u);
  cfg.top_fraction = 1.0;
  EXPECT_THROW(CollectionRetrieval(c, ts, cfg), InvalidArgument);

  TamperedTestSet other = ts;
  other.corpus_id = "elsewhere";
  EXPECT_THROW(CollectionRetrieval(c, other, {}), IntegrityError);
}

TEST(ReportTest, JsonRoundTripAndCsv) {
  const Corpus c = SmallSynthetic(40, true);
  EvaluationConfig cfg;
  cfg.top_fraction = 0.5;
  const EvaluationReport r = CollectionRetrieval(c, Tamper(c, LocationGcdBand{25, 200}, 3), cfg);
  EXPECT_EQ(ReportFromJson(ReportToJson(r)), r);
  EXPECT_EQ(ReportToJson(ReportFromJson(ReportToJson(r))), ReportToJson(r));
  EXPECT_EQ(r.subset, "top50");

  const std::string csv = ReportsToCsv(std::span<const EvaluationReport>(&r, 1));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "test_set,target,strategy,subset,n_documents,va,auc,ap_clean@25,ap_clean@50,ap_clean@100,"
            "ap_tampered@25,ap_tampered@50,ap_tampered@100");
  EXPECT_NE(csv.find("\"Locations: GCD(25, 200)\""), std::string::npos);
  EXPECT_NE(FormatReportTable(std::span<const EvaluationReport>(&r, 1)).find("Locations"), std::string::npos);
  EXPECT_THROW(ReportFromJson("[1]"), Error);
}

}  // namespace
}  // namespace xmc
