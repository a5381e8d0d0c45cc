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

#ifndef HETSUM_TEXTRANK_HPP_
#define HETSUM_TEXTRANK_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hetsum/corpus.hpp"
#include "hetsum/embedder.hpp"

namespace hetsum {

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

// Undirected similarity graph over sentence positions 0..n-1. Only edges
// with weight > min_edge_sim are stored, each once with a < b.
class SentenceGraph {
 public:
  SentenceGraph(std::size_t vertex_count, double min_edge_sim);

  // Ignored when weight <= min_edge_sim or a == b.
  void add_edge(std::size_t a, std::size_t b, double weight);

  std::size_t vertex_count() const { return adjacency_.size(); }
  double min_edge_sim() const { return min_edge_sim_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double weight(std::size_t a, std::size_t b) const;

  struct Neighbor {
    std::size_t vertex;
    double weight;
  };
  const std::vector<Neighbor>& neighbors(std::size_t v) const { return adjacency_[v]; }

 private:
  double min_edge_sim_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

SentenceGraph build_sentence_graph(std::span<const Vector> embeddings, double min_edge_sim);
SentenceGraph build_sentence_graph(std::span<const Sentence> sentences, const EmbeddingProvider& embedder,
                                   double min_edge_sim);

struct RankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

// Weighted TextRank recurrence from all-ones:
//   S'(i) = (1 - d) + d * sum_{j in N(i)} w_ji / (sum_{k in N(j)} w_jk) * S(j)
// iterated until the largest per-vertex change drops below tau.
RankResult pagerank(const SentenceGraph& graph, double damping = 0.85, double tau = 1e-4, std::size_t max_iters = 200);

enum class SelectionMode { kDrop, kTopPercent };

// Returns positions (ascending) of the selected sentences.
//  kDrop: rank by score (earlier position wins ties), cut at the widest gap
//         between adjacent ranked scores, keeping between 1 and ceil(0.3 n).
//  kTopPercent: keep ceil(r n) best.
std::vector<std::size_t> select_salient(std::span<const double> scores, SelectionMode mode, double r = 0.3);
std::vector<Sentence> select_salient(const RankResult& result, std::span<const Sentence> sentences,
                                     SelectionMode mode, double r = 0.3);

inline constexpr double kDropMaxFraction = 0.3;

// ceil(fraction * n) clamped to [1, n], tolerant of representation error
// (0.3 * 10 must give 3, not 4).
std::size_t keep_count(double fraction, std::size_t n);

template <typename T>
std::vector<T> gather(std::span<const T> items, std::span<const std::size_t> positions) {
  std::vector<T> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(items[p]);
  return out;
}

}  // namespace hetsum

#endif  // HETSUM_TEXTRANK_HPP_
