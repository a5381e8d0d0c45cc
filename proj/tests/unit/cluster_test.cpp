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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hetsum/cluster.hpp"
#include "hetsum/error.hpp"
#include "oracles.hpp"

namespace hetsum {
namespace {

using Clusters = std::vector<std::vector<std::size_t>>;

void expect_partition(const ClusterSet& cs, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& c : cs.clusters) {
    EXPECT_FALSE(c.empty());
    for (auto i : c) {
      ASSERT_LT(i, n);
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(seen[i], 1) << "index " << i;
  EXPECT_EQ(cs.threshold_used.size(), cs.clusters.size());
}

TEST(Ward, IdenticalVectorsFormOneCluster) {
  const std::vector<Vector> v(5, Vector{1.0, 2.0});
  EXPECT_EQ(ward_agglomerate(v, 0.1).clusters, (Clusters{{0, 1, 2, 3, 4}}));
}

TEST(Ward, PairMergesIffDistanceWithinThreshold) {
  const std::vector<Vector> v{{0.0}, {1.5}};
  EXPECT_EQ(ward_agglomerate(v, 1.5).size(), 1u);
  EXPECT_EQ(ward_agglomerate(v, 1.4999).size(), 2u);
}

TEST(Ward, ThreeCollinearPoints) {
  const std::vector<Vector> v{{0.0}, {1.0}, {10.0}};
  EXPECT_EQ(ward_agglomerate(v, 2.0).clusters, (Clusters{{0, 1}, {2}}));
}

TEST(Ward, TiesBreakTowardsSmallestMembers) {
  // 0-1 and 2-3 cost the same; either way both pairs merge, then stop.
  const std::vector<Vector> v{{0.0}, {1.0}, {5.0}, {6.0}};
  EXPECT_EQ(ward_agglomerate(v, 1.0).clusters, (Clusters{{0, 1}, {2, 3}}));
  // Equidistant middle point joins the left neighbour first.
  const std::vector<Vector> w{{0.0}, {1.0}, {2.0}};
  EXPECT_EQ(ward_agglomerate(w, 1.0).clusters, (Clusters{{0, 1}, {2}}));
}

TEST(Ward, MatchesNaiveOracle) {
  std::mt19937 rng(17);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 14;
    std::vector<Vector> v(n, Vector(3));
    for (auto& x : v)
      for (auto& c : x) c = nd(rng);
    const double t = 0.5 + 0.1 * (trial % 20);
    const auto got = ward_agglomerate(v, t);
    EXPECT_EQ(got.clusters, testing::naive_ward(v, t)) << "trial " << trial;
    expect_partition(got, n);
  }
}

TEST(Ward, RaisingThresholdNeverAddsClusters) {
  std::mt19937 rng(23);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> v(12, Vector(2));
    for (auto& x : v)
      for (auto& c : x) c = nd(rng);
    std::size_t prev = v.size() + 1;
    for (double t : {0.1, 0.3, 0.6, 1.0, 1.5, 2.5, 4.0, 8.0}) {
      const auto n = ward_agglomerate(v, t).size();
      EXPECT_LE(n, prev);
      prev = n;
    }
  }
}

TEST(Ward, PermutationGivesSameClustersUpToRelabel) {
  std::mt19937 rng(29);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vector> v(10, Vector(2));
    for (auto& x : v)
      for (auto& c : x) c = nd(rng);
    std::vector<std::size_t> perm(v.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Vector> pv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) pv[perm[i]] = v[i];
    const auto a = ward_agglomerate(v, 1.2);
    const auto b = ward_agglomerate(pv, 1.2);
    std::set<std::set<std::size_t>> sa, sb;
    for (const auto& c : a.clusters) sa.insert({c.begin(), c.end()});
    for (const auto& c : b.clusters) {
      std::set<std::size_t> back;
      for (auto i : c) back.insert(static_cast<std::size_t>(std::find(perm.begin(), perm.end(), i) - perm.begin()));
      sb.insert(back);
    }
    EXPECT_EQ(sa, sb);
  }
}

TEST(Multistage, DistantPointsStaySingletons) {
  const std::vector<Vector> v{{0.0}, {10.0}, {20.0}, {30.0}};
  const auto cs = multistage_cluster(v, 2.0, 0.5);
  EXPECT_EQ(cs.size(), 4u);
  EXPECT_EQ(cs.stages, std::vector<double>{2.0});
}

TEST(Multistage, VisitsHalvingThresholdsDownToFloor) {
  // Nested blobs force refinement at every level.
  const std::vector<Vector> v{{0.0}, {0.05}, {0.3}, {0.35}, {0.9}, {0.95}, {50.0}, {80.0}};
  const auto cs = multistage_cluster(v, 2.0, 0.5);
  EXPECT_EQ(cs.stages, (std::vector<double>{2.0, 1.0, 0.5}));
  expect_partition(cs, v.size());
}

TEST(Multistage, BlobRefinedLikeDirectCall) {
  // Six-member blob among eight points: m/n at the first stage is 8/3.
  const std::vector<Vector> v{{0.0, 0.0}, {0.6, 0.0}, {1.2, 0.0}, {0.0, 0.6}, {0.1, 0.1}, {1.2, 0.6},
                              {20.0, 0.0}, {40.0, 0.0}};
  const auto top = ward_agglomerate(v, 2.0);
  ASSERT_EQ(top.clusters, (Clusters{{0, 1, 2, 3, 4, 5}, {6}, {7}}));
  const auto cs = multistage_cluster(v, 2.0, 0.5);
  std::vector<Vector> blob(v.begin(), v.begin() + 6);
  auto direct = ward_agglomerate(blob, 1.0);
  // Every sub-cluster of the refined blob that is still oversized would be
  // refined again; compare the 1.0 level only where that does not happen.
  std::set<std::vector<std::size_t>> got(cs.clusters.begin(), cs.clusters.end());
  const double limit = 6.0 / static_cast<double>(direct.size());
  for (const auto& c : direct.clusters) {
    if (static_cast<double>(c.size()) <= limit) {
      EXPECT_TRUE(got.contains(c));
    }
  }
  EXPECT_TRUE(got.contains({6}));
  EXPECT_TRUE(got.contains({7}));
  expect_partition(cs, v.size());
}

TEST(Multistage, SizeTriggerInvariantOnRandomInputs) {
  std::mt19937 rng(31);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + trial % 25;
    std::vector<Vector> v(n, Vector(2));
    for (auto& x : v)
      for (auto& c : x) c = nd(rng) * (trial % 3 + 0.5);
    const auto cs = multistage_cluster(v, 2.0, 0.5);
    expect_partition(cs, n);
    ASSERT_TRUE(std::is_sorted(cs.stages.rbegin(), cs.stages.rend()));
    for (double t : cs.threshold_used) EXPECT_TRUE(t == 2.0 || t == 1.0 || t == 0.5);
  }
}

TEST(Multistage, BadArguments) {
  const std::vector<Vector> v{{0.0}};
  EXPECT_THROW(multistage_cluster(v, 0.4, 0.5), InvalidArgument);
  EXPECT_THROW(multistage_cluster(std::vector<Vector>{}, 2.0, 0.5), InvalidArgument);
}

}  // namespace
}  // namespace hetsum
