// Copyright 2026 The Hetsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HETSUM_CLUSTER_HPP_
#define HETSUM_CLUSTER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hetsum/corpus.hpp"
#include "hetsum/embedder.hpp"

namespace hetsum {

// A partition of input positions. Members are ascending inside a cluster and
// clusters are ordered by their smallest member.
struct ClusterSet {
  std::vector<std::vector<std::size_t>> clusters;
  // Threshold of the stage that produced each cluster.
  std::vector<double> threshold_used;
  // Every threshold at which an agglomeration pass ran, descending.
  std::vector<double> stages;

  std::size_t size() const { return clusters.size(); }
};

// Ward merge cost between clusters A and B:
//   |A||B| / (|A| + |B|) * |mu_A - mu_B|^2
// Two singletons at Euclidean distance D cost D^2 / 2, so "distance
// threshold" t stops merging once the cheapest merge exceeds t^2 / 2.
ClusterSet ward_agglomerate(std::span<const Vector> vectors, double threshold);

// Clusters at tau_initial, then re-clusters every cluster holding more than
// m/n members at half the threshold (m, n from the stage that produced it)
// for as long as the halved threshold stays >= floor.
ClusterSet multistage_cluster(std::span<const Vector> vectors, double tau_initial = 2.0, double floor = 0.5);
ClusterSet multistage_cluster(std::span<const Sentence> sentences, const EmbeddingProvider& embedder,
                              double tau_initial = 2.0, double floor = 0.5);

}  // namespace hetsum

#endif  // HETSUM_CLUSTER_HPP_
