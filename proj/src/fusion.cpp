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

#include "hetsum/fusion.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hetsum/error.hpp"
#include "hetsum/similarity.hpp"

namespace hetsum {
namespace {

// Unbounded-context scorers are keyed on this many trailing vertices.
constexpr std::size_t kDefaultStateContext = 8;

struct Entry {
  double cost;
  std::size_t parent_state;  // index into the previous layer
  std::size_t parent_rank;
};

struct State {
  std::vector<VertexId> context;  // trailing vertices, current last
  bool has_verb = false;
  std::vector<Entry> best;        // ascending cost, at most k
};

struct Layer {
  std::vector<State> states;
  std::map<std::pair<std::vector<VertexId>, bool>, std::size_t> index;

  State& find_or_add(std::vector<VertexId> context, bool has_verb) {
    auto [it, inserted] = index.try_emplace({context, has_verb}, states.size());
    if (inserted) states.push_back({std::move(context), has_verb, {}});
    return states[it->second];
  }
};

// Keeps the list sorted by cost; an equal-cost newcomer goes after existing
// entries so earlier discoveries win ties.
void offer(std::vector<Entry>& best, const Entry& e, std::size_t k) {
  if (best.size() == k && !(e.cost < best.back().cost)) return;
  auto pos = std::upper_bound(best.begin(), best.end(), e.cost,
                              [](double c, const Entry& x) { return c < x.cost; });
  best.insert(pos, e);
  if (best.size() > k) best.pop_back();
}

std::string token_of(const WordGraph& graph, VertexId v) {
  return v == WordGraph::kEnd ? std::string(kEndMarker) : graph.vertex(v).lower;
}

std::vector<std::string> prefix_tokens(const WordGraph& graph, std::span<const VertexId> vertices) {
  std::vector<std::string> out;
  for (VertexId v : vertices) {
    if (!graph.is_dummy(v)) out.push_back(graph.vertex(v).lower);
  }
  return out;
}

}  // namespace

std::string FusionCandidate::text() const {
  std::string out = detokenize(tokens);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

double step_cost(const WordGraph& graph, VertexId prev, VertexId v, std::size_t depth, double alpha,
                 double logprob) {
  double cost = 0.0;
  if (alpha != 0.0) cost += alpha * graph.edge_weight(prev, v);
  if (alpha != 1.0) cost += (1.0 - alpha) * static_cast<double>(depth) / logprob;
  return cost;
}

double path_cost(const WordGraph& graph, std::span<const VertexId> path, double alpha, const TokenScorer& scorer) {
  if (path.size() < 2 || path.front() != WordGraph::kStart || path.back() != WordGraph::kEnd) {
    throw InvalidArgument("path_cost: path must run from START to END");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    double lp = 0.0;
    if (alpha != 1.0) {
      const auto prefix = prefix_tokens(graph, path.first(i));
      lp = scorer.token_logprob(prefix, token_of(graph, path[i]));
    }
    total += step_cost(graph, path[i - 1], path[i], i, alpha, lp);
  }
  return total;
}

std::vector<FusionCandidate> k_shortest_fusions(const WordGraph& graph, const FusionConfig& config,
                                                const TokenScorer& scorer) {
  if (config.k == 0) throw InvalidArgument("k_shortest_fusions: k must be >= 1");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) throw InvalidArgument("k_shortest_fusions: alpha outside [0, 1]");
  const bool use_lm = config.alpha != 1.0;
  std::size_t width = 1;
  if (use_lm) width = std::max<std::size_t>(1, scorer.context_size() == 0 ? kDefaultStateContext : scorer.context_size());

  struct Final {
    double cost;
    std::size_t layer;
    std::size_t state;
    std::size_t rank;
  };
  std::vector<Final> finals;
  const std::size_t capacity = config.allow_repeats ? config.k : config.k * kRepeatFreeBeam;
  std::vector<Layer> layers(1);

  // Whether the walk ending at (layer, state, rank) already visits v.
  auto visits = [&](std::size_t layer, std::size_t state, std::size_t rank, VertexId v) {
    for (;;) {
      const State& s = layers[layer].states[state];
      if (s.context.back() == v) return true;
      if (layer == 0) return false;
      state = s.best[rank].parent_state;
      rank = s.best[rank].parent_rank;
      --layer;
    }
  };
  {
    State& s = layers[0].find_or_add({WordGraph::kStart}, false);
    s.best.push_back({0.0, 0, 0});
  }

  for (std::size_t depth = 0; depth <= config.max_tokens; ++depth) {
    Layer next;
    Layer& layer = layers[depth];
    for (std::size_t si = 0; si < layer.states.size(); ++si) {
      const State& state = layer.states[si];
      const VertexId u = state.context.back();
      const auto& succ = graph.successors(u);
      if (succ.empty()) continue;

      std::vector<double> lps(succ.size(), 0.0);
      if (use_lm) {
        std::vector<std::string> candidates;
        candidates.reserve(succ.size());
        for (VertexId v : succ) candidates.push_back(token_of(graph, v));
        lps = scorer.logprobs(prefix_tokens(graph, state.context), candidates);
      }

      for (std::size_t vi = 0; vi < succ.size(); ++vi) {
        const VertexId v = succ[vi];
        const double step = step_cost(graph, u, v, depth + 1, config.alpha, lps[vi]);
        if (v == WordGraph::kEnd) {
          if (depth < config.min_tokens || (config.require_verb && !state.has_verb)) continue;
          for (std::size_t r = 0; r < state.best.size(); ++r) {
            finals.push_back({state.best[r].cost + step, depth, si, r});
          }
          continue;
        }
        if (depth + 1 > config.max_tokens) continue;
        std::vector<VertexId> ctx(state.context);
        ctx.push_back(v);
        if (ctx.size() > width) ctx.erase(ctx.begin(), ctx.end() - static_cast<std::ptrdiff_t>(width));
        const bool verb = state.has_verb || graph.vertex(v).pos == PosTag::kVerb;
        State& target = next.find_or_add(std::move(ctx), verb);
        for (std::size_t r = 0; r < state.best.size(); ++r) {
          if (!config.allow_repeats && visits(depth, si, r, v)) continue;
          offer(target.best, {state.best[r].cost + step, si, r}, capacity);
        }
      }
    }
    if (next.states.empty()) break;
    layers.push_back(std::move(next));
  }

  std::stable_sort(finals.begin(), finals.end(), [](const Final& a, const Final& b) { return a.cost < b.cost; });
  if (finals.size() > config.k) finals.resize(config.k);

  std::vector<FusionCandidate> out;
  for (const auto& f : finals) {
    FusionCandidate c;
    c.path_cost = f.cost;
    std::vector<VertexId> reversed{WordGraph::kEnd};
    std::size_t layer = f.layer;
    std::size_t state = f.state;
    std::size_t rank = f.rank;
    for (;;) {
      const State& s = layers[layer].states[state];
      reversed.push_back(s.context.back());
      if (layer == 0) break;
      const Entry& e = s.best[rank];
      state = e.parent_state;
      rank = e.parent_rank;
      --layer;
    }
    c.path.assign(reversed.rbegin(), reversed.rend());
    std::set<std::size_t> sources;
    for (VertexId v : c.path) {
      if (graph.is_dummy(v)) continue;
      const auto& vx = graph.vertex(v);
      c.tokens.push_back(vx.surface);
      c.lowered.push_back(vx.lower);
      for (const auto& [sid, pos] : vx.positions) sources.insert(sid);
    }
    c.source_sentences.assign(sources.begin(), sources.end());
    const auto lp = sentence_logprob(scorer, c.lowered);
    c.sent_logprob = lp.sum;
    c.avg_logprob = lp.average;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<FusionCandidate> select_distinct(std::vector<FusionCandidate> candidates, double d_sim) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const FusionCandidate& a, const FusionCandidate& b) { return a.avg_logprob > b.avg_logprob; });
  std::vector<FusionCandidate> kept;
  for (auto& c : candidates) {
    const bool distinct = std::all_of(kept.begin(), kept.end(), [&](const FusionCandidate& k) {
      return ratcliff_obershelp(c.lowered, k.lowered) < d_sim;
    });
    if (distinct) kept.push_back(std::move(c));
  }
  return kept;
}

}  // namespace hetsum
