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

#ifndef HETSUM_WORD_GRAPH_HPP_
#define HETSUM_WORD_GRAPH_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hetsum/corpus.hpp"

namespace hetsum {

using VertexId = std::size_t;

// Directed word graph over (lowered word, POS) vertices with dummy START and
// END. Sentences are added in order; a token reuses an existing vertex only
// when word and tag match and the current sentence has not used it yet.
class WordGraph {
 public:
  static constexpr VertexId kStart = 0;
  static constexpr VertexId kEnd = 1;
  static constexpr std::string_view kStartLabel = "<START>";
  static constexpr std::string_view kEndLabel = "<END>";

  struct Vertex {
    std::string lower;
    // From the first non-sentence-initial occurrence, else the first one,
    // so capitalisation is not inherited from sentence starts.
    std::string surface;
    PosTag pos = PosTag::kX;
    std::size_t freq = 0;
    // sentence index -> 1-based token offset (START sits at 0, END after
    // the last token)
    std::map<std::size_t, std::size_t> positions;
  };

  WordGraph();

  static WordGraph build(std::span<const Sentence> cluster);

  void add_sentence(const Sentence& sentence);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t sentence_count() const { return sentence_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  bool is_dummy(VertexId v) const { return v == kStart || v == kEnd; }

  bool has_edge(VertexId u, VertexId v) const { return edges_.contains({u, v}); }
  // Sentences that traversed u -> v, ascending.
  const std::vector<std::size_t>& edge_sentences(VertexId u, VertexId v) const { return edges_.at({u, v}); }
  const std::vector<VertexId>& successors(VertexId u) const { return successors_.at(u); }
  const std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>>& edges() const { return edges_; }

  // The vertex walk of an input sentence, START and END included.
  const std::vector<VertexId>& sentence_path(std::size_t sentence) const { return paths_.at(sentence); }

  // Strong-link weight, lower is stronger:
  //   w(u,v)  = (freq(u) + freq(v)) / sum_s 1 / (pos_s(v) - pos_s(u))
  //   w'(u,v) = w(u,v) / (freq(u) freq(v))
  // summing over sentences that contain both with v after u.
  double raw_weight(VertexId u, VertexId v) const;
  double edge_weight(VertexId u, VertexId v) const;

 private:
  VertexId choose_vertex(const Sentence& sentence, std::size_t i, const std::vector<bool>& used) const;
  std::size_t freq(VertexId v) const;

  std::vector<Vertex> vertices_;
  std::map<std::pair<std::string, PosTag>, std::vector<VertexId>> by_key_;
  std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> edges_;
  std::vector<std::vector<VertexId>> successors_;
  std::vector<std::vector<VertexId>> predecessors_;
  std::vector<std::vector<VertexId>> paths_;
  std::vector<bool> surface_initial_;
  std::size_t sentence_count_ = 0;
};

}  // namespace hetsum

#endif  // HETSUM_WORD_GRAPH_HPP_
