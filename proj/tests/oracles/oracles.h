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

// Straight-line reference implementations used to check the library. They
// follow the definitions literally and share no code with src/.

#ifndef XMC_TESTS_ORACLES_ORACLES_H_
#define XMC_TESTS_ORACLES_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/tamper/strategy.h"

namespace xmc::oracle {

using Vec = std::vector<double>;
using Partition = std::vector<std::vector<std::size_t>>;

inline Vec ToVec(const Embedding& e) { return Vec(e.values().begin(), e.values().end()); }

inline double Cos(const Vec& a, const Vec& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

inline double Cos(const Embedding& a, const Embedding& b) { return Cos(ToVec(a), ToVec(b)); }

inline double NormCos(const Vec& a, const Vec& b) { return (Cos(a, b) + 1.0) / 2.0; }

// Sort, then interpolate between the neighbours of position q (n - 1).
inline double Quantile(Vec v, double q) {
  std::sort(v.begin(), v.end());
  if (q >= 1.0) return v.back();
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Average linkage recomputed from scratch every round: O(n^3) per merge.
inline Partition AverageLinkage(const std::vector<Vec>& x, double tau) {
  Partition p;
  for (std::size_t i = 0; i < x.size(); ++i) p.push_back({i});
  auto link = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double s = 0;
    for (std::size_t i : a)
      for (std::size_t j : b) s += NormCos(x[i], x[j]);
    return s / static_cast<double>(a.size() * b.size());
  };
  while (p.size() > 1) {
    // Candidate pairs in lexicographic order of (min a, min b); first max wins.
    std::sort(p.begin(), p.end());
    double best = -std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      for (std::size_t b = a + 1; b < p.size(); ++b) {
        const double l = link(p[a], p[b]);
        if (l > best) {
          best = l;
          ba = a;
          bb = b;
        }
      }
    }
    if (best < tau) break;
    p[ba].insert(p[ba].end(), p[bb].begin(), p[bb].end());
    std::sort(p[ba].begin(), p[ba].end());
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(bb));
  }
  std::sort(p.begin(), p.end());
  return p;
}

inline double Cohesion(const std::vector<Vec>& x, const std::vector<std::size_t>& c) {
  if (c.size() == 1) return 1.0;
  double s = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j, ++n) s += NormCos(x[c[i]], x[c[j]]);
  return s / static_cast<double>(n);
}

// Largest cluster, then most cohesive, then smallest member.
inline std::vector<std::size_t> Majority(const std::vector<Vec>& x, const Partition& p) {
  std::vector<std::size_t> best = p.front();
  for (const auto& c : p) {
    if (c.size() > best.size() ||
        (c.size() == best.size() && Cohesion(x, c) > Cohesion(x, best)) ||
        (c.size() == best.size() && Cohesion(x, c) == Cohesion(x, best) &&
         c.front() < best.front())) {
      best = c;
    }
  }
  return best;
}

inline Vec MajorityMean(const std::vector<Vec>& x, double tau) {
  const auto m = Majority(x, AverageLinkage(x, tau));
  Vec mean(x.front().size(), 0.0);
  for (std::size_t i : m)
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += x[i][d];
  for (double& v : mean) v /= static_cast<double>(m.size());
  return mean;
}

inline std::vector<std::string> Distinct(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids)
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  return out;
}

// Person measure. aggregator_q: nullopt = cluster-then-mean, 1.0 = max,
// otherwise a quantile.
inline std::optional<double> Cmps(const Document& doc, const Corpus& corpus,
                                  std::optional<double> aggregator_q, double tau) {
  std::optional<double> best;
  for (const auto& id : Distinct(doc.mentions_of(EntityType::kPerson))) {
    const Entity& e = corpus.entity(id);
    if (e.references.empty()) continue;
    std::vector<Vec> gallery;
    for (const auto& r : e.references) gallery.push_back(ToVec(r.embedding));
    for (const auto& face : doc.image.faces) {
      double v;
      if (aggregator_q) {
        Vec sims;
        for (const auto& g : gallery) sims.push_back(Cos(ToVec(face), g));
        v = Quantile(sims, *aggregator_q);
      } else {
        const Vec ref = MajorityMean(gallery, tau);
        double nn = 0;
        for (double c : ref) nn += c * c;
        if (nn == 0) break;
        v = Cos(ToVec(face), ref);
      }
      if (!best || v > *best) best = v;
    }
  }
  return best;
}

inline std::optional<double> EntityMeasure(const Document& doc, const Corpus& corpus,
                                           EntityType type, double q) {
  const auto& feature = type == EntityType::kLocation ? doc.image.geo : doc.image.scene;
  if (!feature) return std::nullopt;
  std::optional<double> best;
  for (const auto& id : Distinct(doc.mentions_of(type))) {
    const Entity& e = corpus.entity(id);
    if (e.references.empty()) continue;
    Vec sims;
    for (const auto& r : e.references) sims.push_back(Cos(*feature, r.embedding));
    const double v = Quantile(sims, q);
    if (!best || v > *best) best = v;
  }
  return best;
}

// max over nouns of sum_s rho(s) cos(s, c).
inline std::optional<double> Cmcs(const Document& doc, const SceneVocabulary& vocab) {
  if (doc.nouns.empty() || !doc.image.scene_probabilities) return std::nullopt;
  const auto& rho = *doc.image.scene_probabilities;
  std::optional<double> best;
  for (const auto& n : doc.nouns) {
    double v = 0;
    for (std::size_t s = 0; s < rho.size(); ++s) v += rho[s] * Cos(vocab.classes[s].embedding, n.embedding);
    if (!best || v > *best) best = v;
  }
  return best;
}

// Mann-Whitney by counting every pair.
inline double Auc(const Vec& clean, const Vec& tampered) {
  double s = 0;
  for (double c : clean)
    for (double t : tampered) s += c > t ? 1.0 : (c == t ? 0.5 : 0.0);
  return s / static_cast<double>(clean.size() * tampered.size());
}

// AP over an explicit ranking of relevance flags, truncated where recall
// level r is first reached. literal: precision summed at every position.
inline double Ap(const std::vector<bool>& relevant, double r, bool literal = false) {
  std::size_t total = 0;
  for (bool b : relevant) total += b;
  const auto need = static_cast<std::size_t>(std::ceil(r * static_cast<double>(total) - 1e-9));
  std::size_t hits = 0;
  double sum = 0;
  for (std::size_t i = 0; i < relevant.size() && hits < need; ++i) {
    if (relevant[i]) ++hits;
    if (relevant[i] || literal) sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(need);
}

// Great-circle distance by the spherical law of cosines in atan2 form.
inline double GreatCircleKm(double lat1, double lon1, double lat2, double lon2) {
  const double k = 3.14159265358979323846 / 180.0;
  const double p1 = lat1 * k, p2 = lat2 * k, dl = (lon2 - lon1) * k;
  const double y = std::hypot(std::cos(p2) * std::sin(dl),
                              std::cos(p1) * std::sin(p2) - std::sin(p1) * std::cos(p2) * std::cos(dl));
  const double x = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
  return 6371.0 * std::atan2(y, x);
}

inline bool Intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& s : a)
    if (b.count(s)) return true;
  return false;
}

// Whether `replacement` meets every constraint of `strategy` for `original`.
inline bool ValidSubstitution(const Entity& original, const Entity& replacement,
                              const TamperStrategy& strategy) {
  if (original.id == replacement.id || original.type() != replacement.type()) return false;
  const auto* po = original.person();
  const auto* pr = replacement.person();
  const bool same_gender = po && pr && !po->gender.empty() && po->gender == pr->gender;
  const bool same_country = po && pr && Intersects(po->citizenship, pr->citizenship);
  if (std::holds_alternative<PersonSameGender>(strategy)) return same_gender;
  if (std::holds_alternative<PersonSameCitizenship>(strategy)) return same_country;
  if (std::holds_alternative<PersonSameBoth>(strategy)) return same_gender && same_country;
  if (const auto* band = std::get_if<LocationGcdBand>(&strategy)) {
    const auto& a = original.location()->coordinates;
    const auto& b = replacement.location()->coordinates;
    const double d = GreatCircleKm(a.latitude, a.longitude, b.latitude, b.longitude);
    if (d < band->dmin_km || d > band->dmax_km) return false;
    return !band->require_shared_parent ||
           Intersects(original.location()->parent_classes, replacement.location()->parent_classes);
  }
  if (std::holds_alternative<EventSameParent>(strategy)) {
    return Intersects(original.event()->parent_classes, replacement.event()->parent_classes);
  }
  return true;
}

}  // namespace xmc::oracle

#endif  // XMC_TESTS_ORACLES_ORACLES_H_
