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

#include "hetsum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "hetsum/cluster.hpp"
#include "hetsum/error.hpp"
#include "hetsum/similarity.hpp"
#include "hetsum/word_graph.hpp"

namespace hetsum {
namespace {

struct Survivor {
  const Sentence* sentence;
  std::size_t doc;  // position in the group
  double score;
};

// Orders output by earliest contributing input sentence.
struct OrderKey {
  std::size_t doc;
  std::size_t index;
  std::size_t cluster;
  std::size_t rank;

  auto operator<=>(const OrderKey&) const = default;
};

struct Draft {
  SummarySentence sentence;
  std::set<std::pair<std::size_t, std::size_t>> origin;  // (doc position, sentence index)
  OrderKey key;
};

std::string_view mode_name(SelectionMode m) { return m == SelectionMode::kDrop ? "drop" : "top_percent"; }

SelectionMode parse_mode(const std::string& s) {
  if (s == "drop") return SelectionMode::kDrop;
  if (s == "top_percent") return SelectionMode::kTopPercent;
  throw InvalidArgument("unknown selection mode " + s);
}

void validate(const PipelineConfig& c) {
  if (!(c.damping > 0.0 && c.damping < 1.0)) throw InvalidArgument("damping must lie in (0, 1)");
  if (!(c.tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(c.cluster_floor > 0.0) || c.tau_cluster < c.cluster_floor) {
    throw InvalidArgument("need tau_cluster >= cluster_floor > 0");
  }
  if (c.fusion.k == 0) throw InvalidArgument("k must be >= 1");
  if (!(c.fusion.alpha >= 0.0 && c.fusion.alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (c.cluster_vector_norm < 0.0) throw InvalidArgument("cluster_vector_norm must be >= 0");
  if (c.lm_order == 0) throw InvalidArgument("lm_order must be >= 1");
  if (!(c.lm_k > 0.0)) throw InvalidArgument("lm_k must be positive");
  if (!(c.d_sim > 0.0 && c.d_sim <= 1.0)) throw InvalidArgument("d_sim must lie in (0, 1]");
  if (c.fusion.min_tokens > c.fusion.max_tokens) throw InvalidArgument("min_tokens exceeds max_tokens");
  if (c.mode == SelectionMode::kTopPercent && !(c.top_fraction > 0.0 && c.top_fraction <= 1.0)) {
    throw InvalidArgument("top_fraction must lie in (0, 1]");
  }
}

}  // namespace

std::string_view to_string(SentenceKind kind) { return kind == SentenceKind::kFused ? "fused" : "verbatim"; }

std::string GroupSummary::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

nlohmann::ordered_json to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["damping"] = c.damping;
  j["tau"] = c.tau;
  j["max_iters"] = c.max_iters;
  j["min_edge_sim"] = c.min_edge_sim;
  j["mode"] = mode_name(c.mode);
  j["top_fraction"] = c.top_fraction;
  j["tau_cluster"] = c.tau_cluster;
  j["cluster_floor"] = c.cluster_floor;
  j["cluster_vector_norm"] = c.cluster_vector_norm;
  j["k"] = c.fusion.k;
  j["alpha"] = c.fusion.alpha;
  j["max_tokens"] = c.fusion.max_tokens;
  j["min_tokens"] = c.fusion.min_tokens;
  j["require_verb"] = c.fusion.require_verb;
  j["allow_repeats"] = c.fusion.allow_repeats;
  j["d_sim"] = c.d_sim;
  j["lm_order"] = c.lm_order;
  j["lm_k"] = c.lm_k;
  j["rcr_bridge"] = c.rcr_bridge;
  j["bridge_timeout_ms"] = c.bridge_timeout_ms;
  j["workers"] = c.workers;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "damping") c.damping = v.get<double>();
      else if (key == "tau") c.tau = v.get<double>();
      else if (key == "max_iters") c.max_iters = v.get<std::size_t>();
      else if (key == "min_edge_sim") c.min_edge_sim = v.get<double>();
      else if (key == "mode") c.mode = parse_mode(v.get<std::string>());
      else if (key == "top_fraction") c.top_fraction = v.get<double>();
      else if (key == "tau_cluster") c.tau_cluster = v.get<double>();
      else if (key == "cluster_floor") c.cluster_floor = v.get<double>();
      else if (key == "cluster_vector_norm") c.cluster_vector_norm = v.get<double>();
      else if (key == "k") c.fusion.k = v.get<std::size_t>();
      else if (key == "alpha") c.fusion.alpha = v.get<double>();
      else if (key == "max_tokens") c.fusion.max_tokens = v.get<std::size_t>();
      else if (key == "min_tokens") c.fusion.min_tokens = v.get<std::size_t>();
      else if (key == "require_verb") c.fusion.require_verb = v.get<bool>();
      else if (key == "allow_repeats") c.fusion.allow_repeats = v.get<bool>();
      else if (key == "d_sim") c.d_sim = v.get<double>();
      else if (key == "lm_order") c.lm_order = v.get<std::size_t>();
      else if (key == "lm_k") c.lm_k = v.get<double>();
      else if (key == "rcr_bridge") c.rcr_bridge = v.get<std::string>();
      else if (key == "bridge_timeout_ms") c.bridge_timeout_ms = v.get<std::size_t>();
      else if (key == "workers") c.workers = v.get<std::size_t>();
      else throw InvalidArgument("unknown config key " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  validate(c);
  return c;
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || stop.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop.store(true);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> rescaled(std::span<const double> v, double norm) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  std::vector<double> out(v.begin(), v.end());
  if (sq > 0.0) {
    const double f = norm / std::sqrt(sq);
    for (double& x : out) x *= f;
  }
  return out;
}

GroupSummary summarize_group(std::span<const Document> docs, const PipelineConfig& config, const Providers& providers) {
  if (docs.empty()) throw InvalidArgument("summarize_group: no documents");
  validate(config);

  GroupSummary summary;
  summary.config_snapshot = to_json(config);
  PipelineStats& stats = summary.stats;
  stats.documents = docs.size();

  std::vector<Sentence> all;
  for (const auto& d : docs) all.insert(all.end(), d.sentences.begin(), d.sentences.end());
  stats.sentences = all.size();
  if (all.empty()) throw InvalidArgument("summarize_group: documents contain no sentences");

  // Stage 1.
  std::unique_ptr<TfidfEmbedder> group_embedder;
  const EmbeddingProvider* stage1 = providers.embedder;
  if (!stage1) {
    group_embedder = std::make_unique<TfidfEmbedder>(TfidfEmbedder::build(all));
    stage1 = group_embedder.get();
  }
  std::vector<std::vector<std::size_t>> picked(docs.size());
  std::vector<std::vector<double>> scores(docs.size());
  parallel_for(docs.size(), config.workers, [&](std::size_t i) {
    const auto& sentences = docs[i].sentences;
    if (sentences.empty()) return;
    const auto vectors = stage1->embed_all(sentences);
    const auto graph = build_sentence_graph(vectors, config.min_edge_sim);
    auto rank = pagerank(graph, config.damping, config.tau, config.max_iters);
    picked[i] = select_salient(rank.scores, config.mode, config.top_fraction);
    scores[i] = std::move(rank.scores);
  });

  std::vector<Survivor> survivors;
  std::vector<Sentence> survivor_sentences;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t p : picked[i]) {
      survivors.push_back({&docs[i].sentences[p], i, scores[i][p]});
      survivor_sentences.push_back(docs[i].sentences[p]);
    }
  }
  stats.salient = survivors.size();

  std::unique_ptr<NGramLM> group_lm;
  const TokenScorer* scorer = providers.scorer;
  if (!scorer) {
    std::vector<std::vector<std::string>> seqs;
    seqs.reserve(all.size());
    for (const auto& s : all) seqs.push_back(s.lowered());
    group_lm = std::make_unique<NGramLM>(NGramLM::train(seqs, config.lm_order, config.lm_k));
    scorer = group_lm.get();
  }

  // Stage 2: clustering.
  std::unique_ptr<TfidfEmbedder> survivor_embedder;
  const EmbeddingProvider* stage2 = providers.embedder;
  if (!stage2) {
    survivor_embedder = std::make_unique<TfidfEmbedder>(TfidfEmbedder::build(survivor_sentences));
    stage2 = survivor_embedder.get();
  }
  auto vectors = stage2->embed_all(survivor_sentences);
  if (config.cluster_vector_norm > 0.0) {
    for (auto& v : vectors) v = rescaled(v, config.cluster_vector_norm);
  }
  const ClusterSet clusters = multistage_cluster(vectors, config.tau_cluster, config.cluster_floor);
  stats.clusters = clusters.size();
  stats.cluster_stages = clusters.stages;

  // Stage 2: fusion.
  std::vector<std::vector<Draft>> drafts(clusters.size());
  std::vector<char> fused(clusters.size(), 0);
  std::vector<char> fell_back(clusters.size(), 0);
  auto verbatim = [&](std::size_t member, std::size_t cluster, std::size_t rank) {
    const Survivor& s = survivors[member];
    Draft d;
    d.sentence.text = s.sentence->text;
    d.sentence.kind = SentenceKind::kVerbatim;
    d.sentence.lowered = s.sentence->lowered();
    d.origin.insert({s.doc, s.sentence->index});
    d.key = {s.doc, s.sentence->index, cluster, rank};
    return d;
  };
  parallel_for(clusters.size(), config.workers, [&](std::size_t c) {
    const auto& members = clusters.clusters[c];
    if (members.size() == 1) {
      drafts[c].push_back(verbatim(members[0], c, 0));
      return;
    }
    std::vector<Sentence> group;
    group.reserve(members.size());
    for (std::size_t m : members) group.push_back(*survivors[m].sentence);
    const WordGraph graph = WordGraph::build(group);
    auto candidates = select_distinct(k_shortest_fusions(graph, config.fusion, *scorer), config.d_sim);
    if (candidates.empty()) {
      std::size_t best = members[0];
      for (std::size_t m : members) {
        if (survivors[m].score > survivors[best].score) best = m;
      }
      Draft d = verbatim(best, c, 0);
      for (std::size_t m : members) d.origin.insert({survivors[m].doc, survivors[m].sentence->index});
      d.key = {d.origin.begin()->first, d.origin.begin()->second, c, 0};
      drafts[c].push_back(std::move(d));
      fell_back[c] = 1;
      return;
    }
    fused[c] = 1;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      auto& cand = candidates[r];
      Draft d;
      d.sentence.kind = SentenceKind::kFused;
      d.sentence.text = cand.text();
      for (std::size_t g : cand.source_sentences) {
        const Survivor& s = survivors[members[g]];
        d.origin.insert({s.doc, s.sentence->index});
        if (d.sentence.kind == SentenceKind::kFused && group[g].lowered() == cand.lowered) {
          d.sentence.kind = SentenceKind::kVerbatim;
          d.sentence.text = group[g].text;
        }
      }
      d.sentence.lowered = std::move(cand.lowered);
      drafts[c].push_back(std::move(d));
    }
    // Members no fusion passes through are credited to the best one.
    auto& first = drafts[c].front().origin;
    for (std::size_t m : members) first.insert({survivors[m].doc, survivors[m].sentence->index});
    for (std::size_t r = 0; r < drafts[c].size(); ++r) {
      auto& d = drafts[c][r];
      d.key = {d.origin.begin()->first, d.origin.begin()->second, c, r};
    }
  });
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    stats.fused_clusters += fused[c];
    stats.fusion_fallbacks += fell_back[c];
  }

  std::vector<Draft> ordered;
  for (auto& ds : drafts) {
    for (auto& d : ds) ordered.push_back(std::move(d));
  }
  std::sort(ordered.begin(), ordered.end(), [](const Draft& a, const Draft& b) { return a.key < b.key; });

  // Cross-cluster redundancy: a later sentence too close to a kept one is
  // dropped and its sources credited to that one.
  std::vector<Draft> kept;
  for (auto& d : ordered) {
    Draft* twin = nullptr;
    for (auto& k : kept) {
      if (ratcliff_obershelp(d.sentence.lowered, k.sentence.lowered) >= config.d_sim) {
        twin = &k;
        break;
      }
    }
    if (twin) {
      twin->origin.insert(d.origin.begin(), d.origin.end());
      ++stats.redundant_dropped;
    } else {
      kept.push_back(std::move(d));
    }
  }

  std::size_t fused_count = 0;
  for (auto& d : kept) {
    std::set<std::size_t> doc_positions;
    for (const auto& [doc, index] : d.origin) {
      doc_positions.insert(doc);
      d.sentence.origin.push_back({docs[doc].id, index});
    }
    for (std::size_t p : doc_positions) d.sentence.sources.push_back(docs[p].id);
    if (d.sentence.kind == SentenceKind::kFused) ++fused_count;
    summary.sentences.push_back(std::move(d.sentence));
  }
  summary.abstractive_ratio =
      summary.sentences.empty() ? 0.0 : static_cast<double>(fused_count) / static_cast<double>(summary.sentences.size());

  // Stage 3.
  std::unique_ptr<BridgeClient> owned_rcr;
  BridgeClient* rcr = providers.rcr;
  if (!rcr && !config.rcr_bridge.empty()) {
    try {
      owned_rcr = BridgeClient::open(config.rcr_bridge, std::chrono::milliseconds(config.bridge_timeout_ms));
      rcr = owned_rcr.get();
    } catch (const Error&) {
      stats.rcr_failed = true;
    }
  }
  if (rcr) {
    std::vector<std::string> rewritten;
    try {
      for (const auto& s : summary.sentences) rewritten.push_back(rcr->rcr(s.text));
      for (std::size_t i = 0; i < rewritten.size(); ++i) summary.sentences[i].text = std::move(rewritten[i]);
      stats.rcr_applied = true;
    } catch (const BridgeError&) {
      stats.rcr_failed = true;
    }
  }
  return summary;
}

nlohmann::ordered_json to_json(const GroupSummary& summary) {
  nlohmann::ordered_json j;
  auto sentences = nlohmann::ordered_json::array();
  for (const auto& s : summary.sentences) {
    nlohmann::ordered_json js;
    js["text"] = s.text;
    js["kind"] = to_string(s.kind);
    js["sources"] = s.sources;
    auto origin = nlohmann::ordered_json::array();
    for (const auto& o : s.origin) origin.push_back({{"doc", o.doc_id}, {"sentence", o.index}});
    js["origin"] = std::move(origin);
    sentences.push_back(std::move(js));
  }
  j["sentences"] = std::move(sentences);
  j["abstractive_ratio"] = summary.abstractive_ratio;
  const auto& st = summary.stats;
  j["stats"] = {{"documents", st.documents},
                {"sentences", st.sentences},
                {"salient", st.salient},
                {"clusters", st.clusters},
                {"fused_clusters", st.fused_clusters},
                {"fusion_fallbacks", st.fusion_fallbacks},
                {"redundant_dropped", st.redundant_dropped},
                {"cluster_stages", st.cluster_stages},
                {"rcr_applied", st.rcr_applied},
                {"rcr_failed", st.rcr_failed}};
  j["config"] = summary.config_snapshot;
  return j;
}

GroupSummary summary_from_json(const nlohmann::json& j) {
  GroupSummary g;
  try {
    for (const auto& js : j.at("sentences")) {
      SummarySentence s;
      s.text = js.at("text").get<std::string>();
      const auto kind = js.at("kind").get<std::string>();
      if (kind != "fused" && kind != "verbatim") throw InvalidArgument("unknown sentence kind " + kind);
      s.kind = kind == "fused" ? SentenceKind::kFused : SentenceKind::kVerbatim;
      s.sources = js.at("sources").get<std::vector<std::string>>();
      if (js.contains("origin")) {
        for (const auto& o : js["origin"]) s.origin.push_back({o.at("doc").get<std::string>(), o.at("sentence").get<std::size_t>()});
      }
      for (const auto& t : tokenize(s.text)) s.lowered.push_back(to_lower(t));
      g.sentences.push_back(std::move(s));
    }
    g.abstractive_ratio = j.value("abstractive_ratio", 0.0);
    if (j.contains("stats")) {
      const auto& js = j["stats"];
      auto& st = g.stats;
      st.documents = js.value("documents", std::size_t{0});
      st.sentences = js.value("sentences", std::size_t{0});
      st.salient = js.value("salient", std::size_t{0});
      st.clusters = js.value("clusters", std::size_t{0});
      st.fused_clusters = js.value("fused_clusters", std::size_t{0});
      st.fusion_fallbacks = js.value("fusion_fallbacks", std::size_t{0});
      st.redundant_dropped = js.value("redundant_dropped", std::size_t{0});
      st.cluster_stages = js.value("cluster_stages", std::vector<double>{});
      st.rcr_applied = js.value("rcr_applied", false);
      st.rcr_failed = js.value("rcr_failed", false);
    }
    // Canonical key order, whatever order the input used.
    if (j.contains("config")) g.config_snapshot = to_json(config_from_json(j["config"]));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad summary: ") + e.what(), 0);
  }
  return g;
}

}  // namespace hetsum
