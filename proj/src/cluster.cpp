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

#include "hetsum/cluster.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <utility>

#include "hetsum/error.hpp"

namespace hetsum {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Condensed upper-triangular matrix over slots 0..n-1.
class PairMatrix {
 public:
  explicit PairMatrix(std::size_t n) : n_(n), data_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  double& at(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return data_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct SparseRow {
  std::vector<std::pair<std::size_t, double>> entries;
  double norm2 = 0.0;
};

double sparse_dot(const SparseRow& a, const SparseRow& b) {
  double dot = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first == j->first) {
      dot += i->second * j->second;
      ++i;
      ++j;
    } else if (i->first < j->first) {
      ++i;
    } else {
      ++j;
    }
  }
  return dot;
}

class WardMerger {
 public:
  explicit WardMerger(std::span<const Vector> vectors) : n_(vectors.size()), cost_(vectors.size()) {
    const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
    std::vector<SparseRow> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (vectors[i].size() != dim) throw InvalidArgument("ward_agglomerate: vectors differ in dimension");
      for (std::size_t d = 0; d < dim; ++d) {
        if (vectors[i][d] != 0.0) {
          rows[i].entries.emplace_back(d, vectors[i][d]);
          rows[i].norm2 += vectors[i][d] * vectors[i][d];
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d2 = rows[i].norm2 + rows[j].norm2 - 2.0 * sparse_dot(rows[i], rows[j]);
        cost_.at(i, j) = std::max(d2, 0.0) / 2.0;
      }
    }
    size_.assign(n_, 1);
    first_.resize(n_);
    members_.resize(n_);
    active_.assign(n_, true);
    for (std::size_t i = 0; i < n_; ++i) {
      first_[i] = i;
      members_[i] = {i};
    }
    nn_.assign(n_, kNone);
    nn_cost_.assign(n_, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n_; ++i) refresh(i);
  }

  void run(double limit) {
    for (std::size_t remaining = n_; remaining > 1; --remaining) {
      std::size_t best = kNone;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!active_[i] || nn_[i] == kNone) continue;
        if (best == kNone || better(nn_cost_[i], i, nn_[i], nn_cost_[best], best, nn_[best])) best = i;
      }
      if (best == kNone || nn_cost_[best] > limit) return;
      merge(best, nn_[best]);
    }
  }

  std::vector<std::vector<std::size_t>> clusters() const {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!active_[i]) continue;
      auto m = members_[i];
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
  }

 private:
  // Pair order: cost, then (smaller first member, larger first member).
  bool better(double c1, std::size_t a1, std::size_t b1, double c2, std::size_t a2, std::size_t b2) const {
    if (c1 != c2) return c1 < c2;
    auto key = [&](std::size_t a, std::size_t b) {
      return std::minmax(first_[a], first_[b]);
    };
    return key(a1, b1) < key(a2, b2);
  }

  void refresh(std::size_t i) {
    nn_[i] = kNone;
    nn_cost_[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i || !active_[j]) continue;
      const double c = cost_.at(i, j);
      if (nn_[i] == kNone || better(c, i, j, nn_cost_[i], i, nn_[i])) {
        nn_[i] = j;
        nn_cost_[i] = c;
      }
    }
  }

  void merge(std::size_t a, std::size_t b) {
    const double na = static_cast<double>(size_[a]);
    const double nb = static_cast<double>(size_[b]);
    const double ab = cost_.at(a, b);
    active_[b] = false;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!active_[c] || c == a) continue;
      const double nc = static_cast<double>(size_[c]);
      cost_.at(a, c) = ((na + nc) * cost_.at(a, c) + (nb + nc) * cost_.at(b, c) - nc * ab) / (na + nb + nc);
    }
    size_[a] += size_[b];
    first_[a] = std::min(first_[a], first_[b]);
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();

    for (std::size_t c = 0; c < n_; ++c) {
      if (!active_[c] || c == a) continue;
      if (nn_[c] == a || nn_[c] == b) {
        refresh(c);
      } else if (better(cost_.at(a, c), c, a, nn_cost_[c], c, nn_[c])) {
        nn_[c] = a;
        nn_cost_[c] = cost_.at(a, c);
      }
    }
    refresh(a);
  }

  std::size_t n_;
  PairMatrix cost_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> first_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<bool> active_;
  std::vector<std::size_t> nn_;
  std::vector<double> nn_cost_;
};

}  // namespace

ClusterSet ward_agglomerate(std::span<const Vector> vectors, double threshold) {
  if (vectors.empty()) throw InvalidArgument("ward_agglomerate: no vectors");
  if (!(threshold > 0.0)) throw InvalidArgument("ward_agglomerate: threshold must be > 0");
  WardMerger merger(vectors);
  merger.run(threshold * threshold / 2.0);
  ClusterSet out;
  out.clusters = merger.clusters();
  out.threshold_used.assign(out.clusters.size(), threshold);
  out.stages = {threshold};
  return out;
}

ClusterSet multistage_cluster(std::span<const Vector> vectors, double tau_initial, double floor) {
  if (vectors.empty()) throw InvalidArgument("multistage_cluster: no vectors");
  if (!(floor > 0.0) || tau_initial < floor) throw InvalidArgument("multistage_cluster: need tau_initial >= floor > 0");

  ClusterSet out;
  std::function<void(const std::vector<std::size_t>&, double)> refine =
      [&](const std::vector<std::size_t>& positions, double threshold) {
        if (std::find(out.stages.begin(), out.stages.end(), threshold) == out.stages.end()) {
          out.stages.push_back(threshold);
        }
        std::vector<Vector> subset;
        subset.reserve(positions.size());
        for (std::size_t p : positions) subset.push_back(vectors[p]);
        const ClusterSet stage = ward_agglomerate(subset, threshold);
        const std::size_t m = positions.size();
        const std::size_t n = stage.size();
        for (const auto& local : stage.clusters) {
          std::vector<std::size_t> members;
          members.reserve(local.size());
          for (std::size_t i : local) members.push_back(positions[i]);
          const bool oversized = local.size() * n > m;
          if (oversized && threshold / 2.0 >= floor) {
            refine(members, threshold / 2.0);
          } else {
            out.clusters.push_back(std::move(members));
            out.threshold_used.push_back(threshold);
          }
        }
      };

  std::vector<std::size_t> all(vectors.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  refine(all, tau_initial);

  std::vector<std::size_t> order(out.clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.clusters[a].front() < out.clusters[b].front(); });
  ClusterSet sorted;
  for (std::size_t i : order) {
    sorted.clusters.push_back(std::move(out.clusters[i]));
    sorted.threshold_used.push_back(out.threshold_used[i]);
  }
  sorted.stages = std::move(out.stages);
  std::sort(sorted.stages.begin(), sorted.stages.end(), std::greater<>());
  return sorted;
}

ClusterSet multistage_cluster(std::span<const Sentence> sentences, const EmbeddingProvider& embedder,
                              double tau_initial, double floor) {
  const auto vectors = embedder.embed_all(sentences);
  return multistage_cluster(vectors, tau_initial, floor);
}

}  // namespace hetsum
