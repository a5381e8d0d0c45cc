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

#ifndef HETSUM_PIPELINE_HPP_
#define HETSUM_PIPELINE_HPP_

// End-to-end group summarization:
//   1. per document: TextRank over a sentence graph, salient selection
//   2. across the group: multistage ward clustering of the survivors; each
//      multi-member cluster is fused through its word graph, singletons
//      pass through verbatim
//   3. optional reverse-coreference post-pass over a bridge
//
// Output sentences are ordered by their earliest source (document position
// in the group, then sentence index).

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hetsum/bridge.hpp"
#include "hetsum/corpus.hpp"
#include "hetsum/embedder.hpp"
#include "hetsum/fusion.hpp"
#include "hetsum/ngram_lm.hpp"
#include "hetsum/textrank.hpp"
#include "json.hpp"

namespace hetsum {

struct PipelineConfig {
  // stage 1
  double damping = 0.85;
  double tau = 1e-4;
  std::size_t max_iters = 200;
  double min_edge_sim = 0.05;
  SelectionMode mode = SelectionMode::kDrop;
  double top_fraction = 0.3;
  // stage 2
  double tau_cluster = 2.0;
  double cluster_floor = 0.5;
  // Cluster vectors are rescaled to this L2 norm (0 keeps them raw). At 2,
  // two singletons merge at threshold t iff cosine >= 1 - t^2 / 8.
  double cluster_vector_norm = 2.0;
  FusionConfig fusion;
  double d_sim = 0.3;
  // default language model, trained on the group when none is supplied
  std::size_t lm_order = 3;
  double lm_k = 0.01;
  // stage 3; empty disables it
  std::string rcr_bridge;
  std::size_t bridge_timeout_ms = 5000;
  // 0 = hardware concurrency
  std::size_t workers = 0;
};

nlohmann::ordered_json to_json(const PipelineConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);

enum class SentenceKind { kVerbatim, kFused };

struct SentenceRef {
  std::string doc_id;
  std::size_t index = 0;
};

struct SummarySentence {
  std::string text;
  SentenceKind kind = SentenceKind::kVerbatim;
  std::vector<std::string> sources;  // doc ids, group order
  std::vector<SentenceRef> origin;   // input sentences behind this one
  std::vector<std::string> lowered;  // tokens used for similarity checks
};

struct PipelineStats {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t salient = 0;
  std::size_t clusters = 0;
  std::size_t fused_clusters = 0;
  std::size_t fusion_fallbacks = 0;
  std::size_t redundant_dropped = 0;
  std::vector<double> cluster_stages;
  bool rcr_applied = false;
  bool rcr_failed = false;
};

struct GroupSummary {
  std::vector<SummarySentence> sentences;
  double abstractive_ratio = 0.0;
  PipelineStats stats;
  nlohmann::ordered_json config_snapshot;

  std::string text() const;
};

std::string_view to_string(SentenceKind kind);

// Optional overrides for the built-in providers. Null members select the
// defaults (TF-IDF fit on the group, n-gram model trained on the group).
struct Providers {
  const EmbeddingProvider* embedder = nullptr;
  const TokenScorer* scorer = nullptr;
  BridgeClient* rcr = nullptr;
};

GroupSummary summarize_group(std::span<const Document> docs, const PipelineConfig& config,
                             const Providers& providers = {});

nlohmann::ordered_json to_json(const GroupSummary& summary);
GroupSummary summary_from_json(const nlohmann::json& j);

// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = hardware
// concurrency). The first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

// v scaled to the given L2 norm; zero vectors stay zero.
std::vector<double> rescaled(std::span<const double> v, double norm);

}  // namespace hetsum

#endif  // HETSUM_PIPELINE_HPP_
