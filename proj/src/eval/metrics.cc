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

#include "xmc/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "xmc/core/errors.h"

namespace xmc {

std::string_view ToString(Variant v) {
  return v == Variant::kClean ? "clean" : "tampered";
}

std::string_view ToString(RankOrder o) {
  return o == RankOrder::kDescending ? "desc" : "asc";
}

RankedCollection::RankedCollection(std::vector<RankedEntry> entries,
                                   RankOrder order)
    : entries_(std::move(entries)), order_(order) {
  std::sort(entries_.begin(), entries_.end(),
            [order](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) {
                return order == RankOrder::kDescending ? a.score > b.score
                                                       : a.score < b.score;
              }
              if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
              return a.variant == Variant::kClean && b.variant == Variant::kTampered;
            });
}

std::size_t RankedCollection::count(Variant v) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [v](const RankedEntry& e) { return e.variant == v; }));
}

double VerificationAccuracy(std::span<const ScorePair> pairs) {
  if (pairs.empty()) throw EmptyInput("verification accuracy of no pairs");
  std::size_t wins = 0;
  for (const ScorePair& p : pairs) wins += p.clean > p.tampered;
  return static_cast<double>(wins) / static_cast<double>(pairs.size());
}

double RocAuc(std::span<const double> clean, std::span<const double> tampered) {
  if (clean.empty() || tampered.empty()) throw EmptyInput("AUC needs both classes");
  std::vector<double> sorted(tampered.begin(), tampered.end());
  std::sort(sorted.begin(), sorted.end());
  // Count in half-units so the sum stays an exact integer.
  std::uint64_t half_units = 0;
  for (double c : clean) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), c);
    const auto hi = std::upper_bound(lo, sorted.end(), c);
    half_units += 2 * static_cast<std::uint64_t>(lo - sorted.begin()) +
                  static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<double>(half_units) /
         (2.0 * static_cast<double>(clean.size()) * static_cast<double>(tampered.size()));
}

std::size_t RelevantCutoff(double recall, std::size_t relevant) {
  return static_cast<std::size_t>(
      std::ceil(recall * static_cast<double>(relevant) - 1e-9));
}

double ApAtRecall(const RankedCollection& ranking, Variant relevant,
                  double recall, ApMode mode) {
  if (!(recall > 0.0 && recall <= 1.0)) {
    throw InvalidArgument("recall level must be in (0, 1]");
  }
  const std::size_t total = ranking.count(relevant);
  const std::size_t target = RelevantCutoff(recall, total);
  if (target == 0) {
    throw InsufficientRelevant("ranking has no " + std::string(ToString(relevant)) +
                               " entries");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  const auto& entries = ranking.entries();
  for (std::size_t i = 0; i < entries.size() && hits < target; ++i) {
    const bool is_relevant = entries[i].variant == relevant;
    hits += is_relevant;
    if (is_relevant || mode == ApMode::kLiteral) {
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(target);
}

std::set<std::string> TopKSubset(std::span<const DocScore> scores,
                                 double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("subset fraction must be in (0, 1)");
  }
  std::vector<const DocScore*> order;
  for (const DocScore& s : scores) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const DocScore* a, const DocScore* b) {
    return a->score > b->score || (a->score == b->score && a->doc_id < b->doc_id);
  });
  const std::size_t k = RelevantCutoff(fraction, order.size());
  std::set<std::string> out;
  for (std::size_t i = 0; i < k && i < order.size(); ++i) out.insert(order[i]->doc_id);
  return out;
}

std::set<std::string> TopKSubset(std::span<const ScoredDocument> scored,
                                 Measure measure, double fraction) {
  std::vector<DocScore> scores;
  for (const ScoredDocument& s : scored) {
    if (const auto& v = s.measure(measure).value) scores.push_back({s.doc_id, *v});
  }
  return TopKSubset(scores, fraction);
}

}  // namespace xmc
