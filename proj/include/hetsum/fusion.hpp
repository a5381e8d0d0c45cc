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

#ifndef HETSUM_FUSION_HPP_
#define HETSUM_FUSION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hetsum/ngram_lm.hpp"
#include "hetsum/word_graph.hpp"

namespace hetsum {

struct FusionConfig {
  std::size_t k = 10;
  // Blend between edge weight (1) and language-model term (0).
  double alpha = 0.5;
  // Longest fusion considered, in tokens (the search depth cap).
  std::size_t max_tokens = 40;
  std::size_t min_tokens = 8;
  bool require_verb = true;
  // Walks may revisit vertices. When false, extensions that revisit a vertex
  // are discarded and each state keeps kRepeatFreeBeam * k entries.
  bool allow_repeats = false;
};

inline constexpr std::size_t kRepeatFreeBeam = 4;

struct FusionCandidate {
  std::vector<VertexId> path;        // START ... END
  std::vector<std::string> tokens;   // surfaces, dummies excluded
  std::vector<std::string> lowered;
  double path_cost = 0.0;
  double sent_logprob = 0.0;
  double avg_logprob = 0.0;
  std::vector<std::size_t> source_sentences;  // graph sentence indices

  std::string text() const;
};

// Cost of appending vertex v at depth k (1-based; END sits one past the last
// token) after prefix p:
//   alpha * w'(prev, v) + (1 - alpha) * k / log P(v | p)
// P is the scorer's clamped probability of the lowered word, or of </s> for
// END. With alpha == 1 the scorer is not consulted.
double step_cost(const WordGraph& graph, VertexId prev, VertexId v, std::size_t depth, double alpha,
                 double logprob);
double path_cost(const WordGraph& graph, std::span<const VertexId> path, double alpha, const TokenScorer& scorer);

// The k cheapest valid START -> END walks with at most max_tokens tokens,
// by k-best dynamic programming over the depth-unrolled graph. States key on
// the last max(1, scorer.context_size()) vertices, so the language-model
// term is exact for any scorer with bounded context. Valid means at least
// min_tokens tokens and, if required, a VERB vertex. With allow_repeats the
// result is exact; without it, it is exact on acyclic graphs and a beam
// search otherwise. Results are ordered by cost and carry sentence log
// probabilities from `scorer`. Empty when no valid walk exists.
std::vector<FusionCandidate> k_shortest_fusions(const WordGraph& graph, const FusionConfig& config,
                                                const TokenScorer& scorer);

// Stable sort by avg_logprob (descending), then greedily keep candidates
// whose similarity to every kept one is below d_sim.
std::vector<FusionCandidate> select_distinct(std::vector<FusionCandidate> candidates, double d_sim);

}  // namespace hetsum

#endif  // HETSUM_FUSION_HPP_
