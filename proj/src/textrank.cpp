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

#include "hetsum/textrank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetsum/error.hpp"

namespace hetsum {

SentenceGraph::SentenceGraph(std::size_t vertex_count, double min_edge_sim)
    : min_edge_sim_(min_edge_sim), adjacency_(vertex_count) {
  if (min_edge_sim < 0.0) throw InvalidArgument("min_edge_sim must be >= 0");
}

void SentenceGraph::add_edge(std::size_t a, std::size_t b, double weight) {
  if (a >= vertex_count() || b >= vertex_count()) throw InvalidArgument("edge endpoint out of range");
  if (a == b || !(weight > min_edge_sim_)) return;
  if (a > b) std::swap(a, b);
  edges_.push_back({a, b, weight});
  adjacency_[a].push_back({b, weight});
  adjacency_[b].push_back({a, weight});
}

double SentenceGraph::weight(std::size_t a, std::size_t b) const {
  for (const auto& n : adjacency_.at(a)) {
    if (n.vertex == b) return n.weight;
  }
  return 0.0;
}

SentenceGraph build_sentence_graph(std::span<const Vector> embeddings, double min_edge_sim) {
  SentenceGraph graph(embeddings.size(), min_edge_sim);
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    for (std::size_t j = i + 1; j < embeddings.size(); ++j) {
      graph.add_edge(i, j, cosine(embeddings[i], embeddings[j]));
    }
  }
  return graph;
}

SentenceGraph build_sentence_graph(std::span<const Sentence> sentences, const EmbeddingProvider& embedder,
                                   double min_edge_sim) {
  const auto vectors = embedder.embed_all(sentences);
  return build_sentence_graph(vectors, min_edge_sim);
}

RankResult pagerank(const SentenceGraph& graph, double damping, double tau, std::size_t max_iters) {
  if (!(damping > 0.0 && damping < 1.0)) throw InvalidArgument("damping must lie in (0, 1)");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be > 0");
  const std::size_t n = graph.vertex_count();
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& nb : graph.neighbors(j)) out_weight[j] += nb.weight;
  }

  RankResult result;
  result.scores.assign(n, 1.0);
  std::vector<double> next(n);
  while (result.iterations < max_iters) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& nb : graph.neighbors(i)) {
        sum += nb.weight / out_weight[nb.vertex] * result.scores[nb.vertex];
      }
      next[i] = (1.0 - damping) + damping * sum;
      change = std::max(change, std::abs(next[i] - result.scores[i]));
    }
    result.scores.swap(next);
    ++result.iterations;
    if (change < tau) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::size_t keep_count(double fraction, std::size_t n) {
  if (n == 0) return 0;
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(raw < 1.0 ? 1 : static_cast<std::size_t>(raw), 1, n);
}

std::vector<std::size_t> select_salient(std::span<const double> scores, SelectionMode mode, double r) {
  const std::size_t n = scores.size();
  if (n == 0) throw InvalidArgument("select_salient: no scores");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::size_t keep = 1;
  if (mode == SelectionMode::kTopPercent) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("top_percent ratio must lie in (0, 1]");
    keep = keep_count(r, n);
  } else {
    // Widest drop among cut positions that respect the size guard; the
    // earliest cut wins a tie.
    const std::size_t max_keep = keep_count(kDropMaxFraction, n);
    double widest = -1.0;
    for (std::size_t i = 0; i + 1 < n && i < max_keep; ++i) {
      const double gap = scores[order[i]] - scores[order[i + 1]];
      if (gap > widest) {
        widest = gap;
        keep = i + 1;
      }
    }
  }
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<Sentence> select_salient(const RankResult& result, std::span<const Sentence> sentences,
                                     SelectionMode mode, double r) {
  if (result.scores.size() != sentences.size()) throw InvalidArgument("select_salient: score/sentence count mismatch");
  const auto keep = select_salient(result.scores, mode, r);
  return gather(sentences, std::span<const std::size_t>(keep));
}

}  // namespace hetsum
