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

#ifndef XMC_SIMENG_CLUSTERING_H_
#define XMC_SIMENG_CLUSTERING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xmc/core/embedding.h"

namespace xmc {

inline constexpr double kDefaultTauP = 0.65;

// Threshold on the normalized ([0, 1]) cosine similarity between clusters.
struct ClusteringParams {
  double tau_p = kDefaultTauP;

  // Throws InvalidArgument when tau_p is outside [0, 1].
  void Validate() const;

  friend bool operator==(const ClusteringParams&, const ClusteringParams&) = default;
};

using Cluster = std::vector<std::size_t>;

// Agglomerative clustering of a face gallery under average linkage on the
// normalized cosine. Each step merges the most similar pair of clusters;
// clustering stops once no pair reaches tau_p. Ties between equally similar
// pairs go to the pair whose (smallest member, smallest member) is
// lexicographically smallest.
//
// Returns a partition of [0, n): members ascending, clusters ordered by their
// smallest member. Throws EmptyInput.
std::vector<Cluster> ClusterReferences(std::span<const Embedding> faces,
                                       const ClusteringParams& params);

// Index of the majority cluster: largest, then highest mean pairwise
// normalized cosine (a singleton counts as 1), then smallest member.
std::size_t MajorityCluster(std::span<const Embedding> faces,
                            std::span<const Cluster> clusters);

// Mean of the majority cluster's members, summed in ascending index order.
// Returns nullopt if that mean is the zero vector. Throws EmptyInput.
std::optional<Embedding> TryPersonReferenceVector(
    std::span<const Embedding> faces, const ClusteringParams& params);

// As above; throws InvalidEmbedding for a degenerate (zero) mean.
Embedding PersonReferenceVector(std::span<const Embedding> faces,
                                const ClusteringParams& params);

}  // namespace xmc

#endif  // XMC_SIMENG_CLUSTERING_H_
