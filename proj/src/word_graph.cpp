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

#include "hetsum/word_graph.hpp"

#include <algorithm>
#include <tuple>

#include "hetsum/error.hpp"

namespace hetsum {

WordGraph::WordGraph() {
  vertices_.resize(2);
  vertices_[kStart].lower = vertices_[kStart].surface = std::string(kStartLabel);
  vertices_[kEnd].lower = vertices_[kEnd].surface = std::string(kEndLabel);
  vertices_[kStart].pos = vertices_[kEnd].pos = PosTag::kX;
  successors_.resize(2);
  predecessors_.resize(2);
  surface_initial_.resize(2, false);
}

WordGraph WordGraph::build(std::span<const Sentence> cluster) {
  if (cluster.empty()) throw InvalidArgument("build_word_graph: empty cluster");
  WordGraph g;
  for (const auto& s : cluster) g.add_sentence(s);
  return g;
}

std::size_t WordGraph::freq(VertexId v) const { return is_dummy(v) ? sentence_count_ : vertices_[v].freq; }

VertexId WordGraph::choose_vertex(const Sentence& sentence, std::size_t i, const std::vector<bool>& used) const {
  const auto& tok = sentence.tokens[i];
  auto it = by_key_.find({tok.lower, tok.pos});
  if (it == by_key_.end()) return kStart;  // sentinel: create a new vertex

  auto key_of = [&](VertexId v) { return std::make_pair(std::cref(vertices_[v].lower), vertices_[v].pos); };
  auto overlap = [&](VertexId v) {
    int shared = 0;
    if (i > 0) {
      const auto& prev = sentence.tokens[i - 1];
      for (VertexId p : predecessors_[v]) {
        if (!is_dummy(p) && key_of(p) == std::make_pair(std::cref(prev.lower), prev.pos)) {
          ++shared;
          break;
        }
      }
    }
    if (i + 1 < sentence.tokens.size()) {
      const auto& next = sentence.tokens[i + 1];
      for (VertexId s : successors_[v]) {
        if (!is_dummy(s) && key_of(s) == std::make_pair(std::cref(next.lower), next.pos)) {
          ++shared;
          break;
        }
      }
    }
    return shared;
  };

  VertexId best = kStart;
  std::tuple<int, std::size_t> best_rank{-1, 0};
  for (VertexId v : it->second) {  // creation order
    if (used[v]) continue;
    const std::tuple<int, std::size_t> rank{overlap(v), vertices_[v].freq};
    if (best == kStart || rank > best_rank) {
      best = v;
      best_rank = rank;
    }
  }
  return best;
}

void WordGraph::add_sentence(const Sentence& sentence) {
  if (sentence.tokens.empty()) throw InvalidArgument("build_word_graph: sentence without tokens");
  const std::size_t sid = sentence_count_++;
  std::vector<bool> used(vertices_.size(), false);
  std::vector<VertexId> path{kStart};
  vertices_[kStart].positions[sid] = 0;

  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    VertexId v = choose_vertex(sentence, i, used);
    if (v == kStart) {
      const auto& tok = sentence.tokens[i];
      v = vertices_.size();
      Vertex vx;
      vx.lower = tok.lower;
      vx.surface = tok.surface;
      vx.pos = tok.pos;
      vertices_.push_back(std::move(vx));
      surface_initial_.push_back(i == 0);
      successors_.emplace_back();
      predecessors_.emplace_back();
      used.push_back(false);
      by_key_[{tok.lower, tok.pos}].push_back(v);
    }
    if (i > 0 && surface_initial_[v]) {
      vertices_[v].surface = sentence.tokens[i].surface;
      surface_initial_[v] = false;
    }
    used[v] = true;
    ++vertices_[v].freq;
    vertices_[v].positions[sid] = i + 1;
    path.push_back(v);
  }
  path.push_back(kEnd);
  vertices_[kEnd].positions[sid] = sentence.tokens.size() + 1;

  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const VertexId u = path[i];
    const VertexId v = path[i + 1];
    auto [it, inserted] = edges_.try_emplace({u, v});
    it->second.push_back(sid);
    if (inserted) {
      successors_[u].push_back(v);
      predecessors_[v].push_back(u);
    }
  }
  paths_.push_back(std::move(path));
}

double WordGraph::raw_weight(VertexId u, VertexId v) const {
  if (!has_edge(u, v)) throw InvalidArgument("edge_weight: no such edge");
  double inverse_diff = 0.0;
  const auto& pu = vertices_[u].positions;
  const auto& pv = vertices_[v].positions;
  for (const auto& [sid, posu] : pu) {
    auto it = pv.find(sid);
    if (it != pv.end() && it->second > posu) inverse_diff += 1.0 / static_cast<double>(it->second - posu);
  }
  return static_cast<double>(freq(u) + freq(v)) / inverse_diff;
}

double WordGraph::edge_weight(VertexId u, VertexId v) const {
  return raw_weight(u, v) / (static_cast<double>(freq(u)) * static_cast<double>(freq(v)));
}

}  // namespace hetsum
