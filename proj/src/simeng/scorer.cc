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

#include "xmc/simeng/scorer.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "measures_internal.h"

namespace xmc {

void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

Scorer::Scorer(const Corpus& corpus, ScoringConfig config, std::size_t threads)
    : corpus_(&corpus),
      config_(config),
      threads_(threads),
      unit_vocab_(internal::UnitVocabulary(corpus.vocabulary())) {
  config_.Validate();
  if (config_.persons.aggregator) return;

  std::vector<const Entity*> persons;
  for (const std::string& id : corpus.entity_ids(EntityType::kPerson)) {
    const Entity& e = corpus.entity(id);
    if (!e.references.empty()) persons.push_back(&e);
  }
  std::vector<std::optional<Embedding>> refs(persons.size());
  ParallelFor(persons.size(), threads_, [&](std::size_t i) {
    refs[i] = internal::BuildPersonReference(*persons[i], config_.persons.clustering);
  });
  for (std::size_t i = 0; i < persons.size(); ++i) {
    person_refs_.emplace(persons[i]->id, std::move(refs[i]));
  }
}

PersonResult Scorer::Persons(const Document& doc) const {
  return internal::ScorePersons(doc, *corpus_, config_.persons, person_refs_);
}

EntityResult Scorer::Locations(const Document& doc) const {
  return internal::ScoreEntities(doc, *corpus_, EntityType::kLocation,
                                 config_.locations);
}

EntityResult Scorer::Events(const Document& doc) const {
  return internal::ScoreEntities(doc, *corpus_, EntityType::kEvent,
                                 config_.events);
}

ContextResult Scorer::Context(const Document& doc) const {
  return internal::ScoreContext(doc, unit_vocab_);
}

ScoredDocument Scorer::Score(const Document& doc) const {
  ScoredDocument out;
  out.doc_id = doc.id;
  PersonResult p = Persons(doc);
  EntityResult l = Locations(doc);
  EntityResult e = Events(doc);
  ContextResult c = Context(doc);
  out.measures = {p.measure, l.measure, e.measure, c.measure};
  out.persons = std::move(p.breakdown);
  out.locations = std::move(l.breakdown);
  out.events = std::move(e.breakdown);
  out.context = std::move(c.breakdown);
  return out;
}

MeasureValue Scorer::ScoreMeasure(const Document& doc, Measure m) const {
  switch (m) {
    case Measure::kCmps:
      return Persons(doc).measure;
    case Measure::kCmls:
      return Locations(doc).measure;
    case Measure::kCmes:
      return Events(doc).measure;
    case Measure::kCmcs:
      return Context(doc).measure;
  }
  return {};
}

std::vector<ScoredDocument> Scorer::ScoreAll(std::span<const Document> docs) const {
  std::vector<ScoredDocument> out(docs.size());
  ParallelFor(docs.size(), threads_, [&](std::size_t i) { out[i] = Score(docs[i]); });
  return out;
}

std::vector<MeasureValue> Scorer::ScoreAll(std::span<const Document> docs,
                                           Measure m) const {
  std::vector<MeasureValue> out(docs.size());
  ParallelFor(docs.size(), threads_,
              [&](std::size_t i) { out[i] = ScoreMeasure(docs[i], m); });
  return out;
}

}  // namespace xmc
