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

#include "xmc/simeng/clustering.h"

#include <algorithm>
#include <iterator>
#include <string>

#include "xmc/core/errors.h"
#include "xmc/simeng/similarity.h"

namespace xmc {

void ClusteringParams::Validate() const {
  if (!(tau_p >= 0.0 && tau_p <= 1.0)) {
    throw InvalidArgument("tau_p must be in [0, 1], got " + std::to_string(tau_p));
  }
}

std::vector<Cluster> ClusterReferences(std::span<const Embedding> faces,
                                       const ClusteringParams& params) {
  params.Validate();
  const std::size_t n = faces.size();
  if (n == 0) throw EmptyInput("no faces to cluster");
  for (const Embedding& f : faces) {
    if (f.dim() != faces.front().dim()) {
      throw DimMismatch("gallery faces differ in dim");
    }
  }

  // Slot i holds the cluster whose smallest member is i. sum[i][j] is the
  // total pairwise similarity between the clusters in slots i and j, so the
  // average linkage is sum / (size_i * size_j).
  std::vector<std::vector<double>> sum(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum[i][j] = sum[j][i] = NormalizedCosine(faces[i], faces[j]);
    }
  }
  std::vector<Cluster> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<bool> active(n, true);

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    double best = -1.0;
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double link = sum[a][b] / static_cast<double>(members[a].size() *
                                                            members[b].size());
        if (link > best) {
          best = link;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best < params.tau_p) break;

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      sum[best_a][k] += sum[best_b][k];
      sum[k][best_a] = sum[best_a][k];
    }
    Cluster merged;
    merged.reserve(members[best_a].size() + members[best_b].size());
    std::merge(members[best_a].begin(), members[best_a].end(),
               members[best_b].begin(), members[best_b].end(),
               std::back_inserter(merged));
    members[best_a] = std::move(merged);
    members[best_b].clear();
    active[best_b] = false;
  }

  std::vector<Cluster> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) out.push_back(std::move(members[i]));
  }
  return out;
}

std::size_t MajorityCluster(std::span<const Embedding> faces,
                            std::span<const Cluster> clusters) {
  if (clusters.empty()) throw EmptyInput("no clusters");
  auto cohesion = [&](const Cluster& c) {
    if (c.size() < 2) return 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        total += NormalizedCosine(faces[c[i]], faces[c[j]]);
      }
    }
    return total / static_cast<double>(c.size() * (c.size() - 1) / 2);
  };

  std::size_t best = 0;
  double best_cohesion = cohesion(clusters[0]);
  for (std::size_t i = 1; i < clusters.size(); ++i) {
    const Cluster& c = clusters[i];
    const Cluster& b = clusters[best];
    if (c.size() < b.size()) continue;
    const double coh = cohesion(c);
    // Later clusters have larger smallest members, so equal cohesion keeps
    // the earlier one.
    if (c.size() > b.size() || coh > best_cohesion) {
      best = i;
      best_cohesion = coh;
    }
  }
  return best;
}

std::optional<Embedding> TryPersonReferenceVector(
    std::span<const Embedding> faces, const ClusteringParams& params) {
  const std::vector<Cluster> clusters = ClusterReferences(faces, params);
  const Cluster& majority = clusters[MajorityCluster(faces, clusters)];
  std::vector<double> mean(faces.front().dim(), 0.0);
  for (std::size_t idx : majority) {
    const auto v = faces[idx].values();
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += v[d];
  }
  for (double& x : mean) x /= static_cast<double>(majority.size());
  try {
    return Embedding(std::move(mean));
  } catch (const InvalidEmbedding&) {
    return std::nullopt;
  }
}

Embedding PersonReferenceVector(std::span<const Embedding> faces,
                                const ClusteringParams& params) {
  auto ref = TryPersonReferenceVector(faces, params);
  if (!ref) throw InvalidEmbedding("majority cluster has a zero mean");
  return *std::move(ref);
}

}  // namespace xmc
