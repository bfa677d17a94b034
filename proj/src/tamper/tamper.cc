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

#include "xmc/tamper/tamper.h"

#include <algorithm>
#include <cmath>

#include "xmc/core/errors.h"
#include "xmc/simeng/similarity.h"

namespace xmc {

std::vector<std::string> TamperedTestSet::doc_ids() const {
  std::vector<std::string> ids;
  if (target() == TamperTarget::kContext) {
    for (const auto& [doc, donor] : image_substitutions) ids.push_back(doc);
  } else {
    for (const auto& [doc, subs] : entity_substitutions) ids.push_back(doc);
  }
  return ids;
}

bool TamperedTestSet::contains(const std::string& doc_id) const {
  return target() == TamperTarget::kContext
             ? image_substitutions.contains(doc_id)
             : entity_substitutions.contains(doc_id);
}

std::vector<std::string> CandidatePool(const Entity& original,
                                       const Corpus& corpus,
                                       const TamperStrategy& strategy) {
  const auto constraints = ConstraintsOf(strategy);
  std::vector<std::string> pool;
  for (const std::string& id : corpus.entity_ids(original.type())) {
    if (id == original.id) continue;
    const Entity& candidate = corpus.entity(id);
    const bool ok = std::all_of(constraints.begin(), constraints.end(), [&](Constraint c) {
      return Satisfies(original, candidate, strategy, c);
    });
    if (ok) pool.push_back(id);
  }
  return pool;
}

Selection SelectReplacement(const Entity& original, const Corpus& corpus,
                            const TamperStrategy& strategy, Rng& rng,
                            const std::set<std::string>& exclude) {
  if (auto type = EntityTypeOf(TargetOf(strategy)); !type || *type != original.type()) {
    throw InvalidArgument("strategy " + StrategyName(strategy) + " does not apply to a " +
                          std::string(ToString(original.type())));
  }
  std::vector<std::string> pool = CandidatePool(original, corpus, strategy);
  std::erase_if(pool, [&](const std::string& id) { return exclude.contains(id); });
  const std::size_t total = ConstraintsOf(strategy).size();
  if (!pool.empty()) {
    return {pool[rng.UniformIndex(pool.size())], false, total};
  }

  std::vector<std::string> best;
  std::size_t best_count = 0;
  for (const std::string& id : corpus.entity_ids(original.type())) {
    if (id == original.id || exclude.contains(id)) continue;
    const std::size_t n = SatisfiedCount(original, corpus.entity(id), strategy);
    if (best.empty() || n > best_count) {
      best = {id};
      best_count = n;
    } else if (n == best_count) {
      best.push_back(id);
    }
  }
  if (best.empty()) {
    throw NoCandidates("no replacement for '" + original.id + "'");
  }
  return {best[rng.UniformIndex(best.size())], true, best_count};
}

TamperedTestSet TamperEntities(const Corpus& corpus,
                               const TamperStrategy& strategy,
                               std::uint64_t seed) {
  Validate(strategy);
  const auto type = EntityTypeOf(TargetOf(strategy));
  if (!type) throw InvalidArgument("TamperEntities needs an entity strategy");

  TamperedTestSet out;
  out.corpus_id = corpus.id();
  out.strategy = strategy;
  out.seed = seed;

  std::vector<const Document*> docs;
  for (const Document& d : corpus.documents()) {
    if (!d.mentions_of(*type).empty()) docs.push_back(&d);
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });

  for (const Document* doc : docs) {
    Rng rng = Rng::ForKey(seed, doc->id);
    const std::vector<std::string> mentions = DistinctMentions(*doc, *type);
    std::set<std::string> exclude(mentions.begin(), mentions.end());
    std::map<std::string, std::string> subs;
    std::vector<FallbackRecord> fallbacks;
    try {
      for (const std::string& id : mentions) {
        const Entity& original = corpus.entity(id);
        Selection sel = SelectReplacement(original, corpus, strategy, rng, exclude);
        exclude.insert(sel.entity_id);
        if (sel.used_fallback) {
          fallbacks.push_back({doc->id, id, sel.entity_id, sel.satisfied,
                               ConstraintsOf(strategy).size()});
        }
        subs.emplace(id, std::move(sel.entity_id));
      }
    } catch (const NoCandidates& e) {
      out.dropped.push_back({doc->id, e.what()});
      continue;
    }
    out.entity_substitutions.emplace(doc->id, std::move(subs));
    out.fallback_log.insert(out.fallback_log.end(), fallbacks.begin(), fallbacks.end());
  }
  return out;
}

TamperedTestSet TamperContext(const Corpus& corpus,
                              const TamperStrategy& strategy,
                              std::uint64_t seed) {
  Validate(strategy);
  if (TargetOf(strategy) != TamperTarget::kContext) {
    throw InvalidArgument("TamperContext needs a context strategy");
  }
  std::vector<const Document*> docs;
  for (const Document& d : corpus.documents()) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });
  if (docs.size() < 2) throw NoCandidates("context tampering needs at least two documents");

  const auto* similar = std::get_if<ContextSimilarImage>(&strategy);
  if (similar) {
    for (const Document* d : docs) {
      if (!d->image.similarity) {
        throw MissingSimilarityEmbedding("document '" + d->id + "'");
      }
    }
  }

  TamperedTestSet out;
  out.corpus_id = corpus.id();
  out.strategy = strategy;
  out.seed = seed;
  const std::size_t n = docs.size();
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = Rng::ForKey(seed, docs[i]->id);
    std::size_t donor = 0;
    if (!similar) {
      donor = rng.UniformIndex(n - 1);
      if (donor >= i) ++donor;
    } else {
      struct Ranked {
        double similarity;
        std::size_t index;
      };
      std::vector<Ranked> ranked;
      ranked.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        ranked.push_back({Cosine(*docs[i]->image.similarity, *docs[j]->image.similarity), j});
      }
      const double raw = similar->top_fraction * static_cast<double>(n - 1);
      const auto top = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::ceil(raw - 1e-9)), 1, n - 1);
      // Indices follow ascending doc id, so index order breaks ties by id.
      auto better = [](const Ranked& a, const Ranked& b) {
        return a.similarity > b.similarity ||
               (a.similarity == b.similarity && a.index < b.index);
      };
      std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top),
                        ranked.end(), better);
      donor = ranked[rng.UniformIndex(top)].index;
    }
    out.image_substitutions.emplace(docs[i]->id, docs[donor]->id);
  }
  return out;
}

TamperedTestSet Tamper(const Corpus& corpus, const TamperStrategy& strategy,
                       std::uint64_t seed) {
  return TargetOf(strategy) == TamperTarget::kContext
             ? TamperContext(corpus, strategy, seed)
             : TamperEntities(corpus, strategy, seed);
}

Document ApplyTampering(const Corpus& corpus, const TamperedTestSet& testset,
                        const Document& clean) {
  Document doc = clean;
  if (testset.target() == TamperTarget::kContext) {
    auto it = testset.image_substitutions.find(clean.id);
    if (it == testset.image_substitutions.end()) {
      throw InvalidArgument("document '" + clean.id + "' is not in the test set");
    }
    doc.image = corpus.document(it->second).image;
    return doc;
  }
  auto it = testset.entity_substitutions.find(clean.id);
  if (it == testset.entity_substitutions.end()) {
    throw InvalidArgument("document '" + clean.id + "' is not in the test set");
  }
  const EntityType type = *EntityTypeOf(testset.target());
  for (std::string& id : doc.mentions_of(type)) {
    auto sub = it->second.find(id);
    if (sub != it->second.end()) id = sub->second;
  }
  return doc;
}

}  // namespace xmc
