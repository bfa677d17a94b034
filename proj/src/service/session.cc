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

#include "xmc/service/session.h"

#include <mutex>

#include "xmc/core/errors.h"

namespace xmc {
namespace {

constexpr std::size_t kMaxScorers = 8;

std::string ScoringKey(const ScoringConfig& scoring) {
  std::string key;
  for (Measure m : kMeasures) key += MeasureFingerprint(scoring, m) + ";";
  return key;
}

}  // namespace

ApiSession::ApiSession(EngineConfig config, std::size_t threads)
    : config_(std::move(config)), threads_(threads) {
  config_.Validate();
}

void ApiSession::LoadCorpus(std::shared_ptr<const Corpus> corpus) {
  std::unique_lock lock(mu_);
  corpus_ = std::move(corpus);
  testsets_.clear();
  measures_.clear();
  scorers_.clear();
  pairs_.clear();
}

std::shared_ptr<const Corpus> ApiSession::corpus() const {
  std::shared_lock lock(mu_);
  return corpus_;
}

void ApiSession::AddTestSet(const std::string& name, TamperedTestSet testset) {
  std::unique_lock lock(mu_);
  if (!corpus_) throw IntegrityError("no corpus loaded");
  if (testset.corpus_id != corpus_->id()) {
    throw IntegrityError("test set '" + name + "' belongs to corpus '" +
                         testset.corpus_id + "'");
  }
  testsets_[name] = std::make_shared<const TamperedTestSet>(std::move(testset));
  // Pairs computed for a replaced test set are stale.
  for (auto it = pairs_.begin(); it != pairs_.end();) {
    if (it->first.starts_with(name + "|")) {
      it = pairs_.erase(it);
    } else {
      ++it;
    }
  }
}

std::shared_ptr<const TamperedTestSet> ApiSession::FindTestSet(
    const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = testsets_.find(name);
  return it == testsets_.end() ? nullptr : it->second;
}

std::vector<std::string> ApiSession::TestSetNames() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> names;
  for (const auto& [name, ts] : testsets_) names.push_back(name);
  return names;
}

ApiSession::CachedMeasure ApiSession::Compute(const Corpus& corpus,
                                              const Document& doc,
                                              const ScoringConfig& scoring,
                                              Measure m) const {
  switch (m) {
    case Measure::kCmps: {
      PersonResult r = Cmps(doc, corpus, scoring.persons);
      return {r.measure, std::move(r.breakdown)};
    }
    case Measure::kCmls: {
      EntityResult r = Cmls(doc, corpus, scoring.locations);
      return {r.measure, std::move(r.breakdown)};
    }
    case Measure::kCmes: {
      EntityResult r = Cmes(doc, corpus, scoring.events);
      return {r.measure, std::move(r.breakdown)};
    }
    case Measure::kCmcs: {
      ContextResult r = Cmcs(doc, corpus.vocabulary());
      return {r.measure, std::move(r.breakdown)};
    }
  }
  throw InvalidArgument("unknown measure");
}

ScoredDocument ApiSession::Score(const std::string& doc_id,
                                 const ScoringConfig& scoring) {
  scoring.Validate();
  std::shared_ptr<const Corpus> corpus = this->corpus();
  if (!corpus) throw IntegrityError("no corpus loaded");
  const Document& doc = corpus->document(doc_id);

  ScoredDocument out;
  out.doc_id = doc_id;
  for (Measure m : kMeasures) {
    const std::string key = doc_id + "|" + MeasureFingerprint(scoring, m);
    std::optional<CachedMeasure> cached;
    {
      std::shared_lock lock(mu_);
      auto it = measures_.find(key);
      if (it != measures_.end() && corpus == corpus_) cached = it->second;
    }
    if (!cached) {
      cached = Compute(*corpus, doc, scoring, m);
      computations_.fetch_add(1);
      std::unique_lock lock(mu_);
      if (corpus == corpus_) measures_.emplace(key, *cached);
    }
    out.measures[static_cast<std::size_t>(m)] = cached->value;
    switch (m) {
      case Measure::kCmps:
        out.persons = std::get<PersonBreakdown>(cached->breakdown);
        break;
      case Measure::kCmls:
        out.locations = std::get<EntityBreakdown>(cached->breakdown);
        break;
      case Measure::kCmes:
        out.events = std::get<EntityBreakdown>(cached->breakdown);
        break;
      case Measure::kCmcs:
        out.context = std::get<ContextBreakdown>(cached->breakdown);
        break;
    }
  }
  return out;
}

ScoredDocument ApiSession::ScoreUncached(const Document& doc,
                                         const ScoringConfig& scoring) const {
  scoring.Validate();
  std::shared_ptr<const Corpus> corpus = this->corpus();
  if (!corpus) throw IntegrityError("no corpus loaded");
  return ScoreDocument(doc, *corpus, scoring);
}

std::shared_ptr<const Scorer> ApiSession::ScorerFor(const ScoringConfig& scoring) {
  scoring.Validate();
  const std::string key = ScoringKey(scoring);
  std::shared_ptr<const Corpus> corpus;
  {
    std::shared_lock lock(mu_);
    if (!corpus_) throw IntegrityError("no corpus loaded");
    auto it = scorers_.find(key);
    if (it != scorers_.end()) return it->second;
    corpus = corpus_;
  }
  // The deleter holds the corpus so the scorer never outlives it.
  std::shared_ptr<const Scorer> owner(
      new Scorer(*corpus, scoring, threads_),
      [corpus](const Scorer* s) { delete s; });
  std::unique_lock lock(mu_);
  if (corpus != corpus_) return owner;
  if (scorers_.size() >= kMaxScorers) scorers_.clear();
  auto [it, inserted] = scorers_.emplace(key, owner);
  return it->second;
}

std::shared_ptr<const std::vector<DocPair>> ApiSession::Pairs(
    const std::string& testset, const ScoringConfig& scoring) {
  const std::string key = testset + "|" + ScoringKey(scoring);
  std::shared_ptr<const TamperedTestSet> ts;
  {
    std::shared_lock lock(mu_);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    auto t = testsets_.find(testset);
    if (t == testsets_.end()) throw InvalidArgument("unknown test set '" + testset + "'");
    ts = t->second;
  }
  std::shared_ptr<const Scorer> scorer = ScorerFor(scoring);
  auto pairs = std::make_shared<const std::vector<DocPair>>(
      EvaluationPairs(*scorer, *ts));
  std::unique_lock lock(mu_);
  pairs_[key] = pairs;
  return pairs;
}

}  // namespace xmc
