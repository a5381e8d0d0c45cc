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

#include <atomic>

#include "hetsum/error.hpp"
#include "hetsum/pipeline.hpp"
#include "invariants.hpp"
#include "synthetic.hpp"

namespace hetsum {
namespace {

PipelineConfig fast_config() {
  PipelineConfig c;
  c.workers = 2;
  return c;
}

const testing::SyntheticCorpus& corpus() {
  static const auto c = [] {
    testing::SyntheticOptions opt;
    opt.documents = 30;
    opt.topics = 6;
    opt.seed = 5;
    return testing::make_corpus(opt);
  }();
  return c;
}

TEST(Pipeline, SingleSentenceDocumentIsVerbatim) {
  const std::vector<Document> docs{make_document("a", "The council approved the budget on Monday.", std::nullopt)};
  const auto s = summarize_group(docs, fast_config());
  ASSERT_EQ(s.sentences.size(), 1u);
  EXPECT_EQ(s.sentences[0].text, "The council approved the budget on Monday.");
  EXPECT_EQ(s.sentences[0].kind, SentenceKind::kVerbatim);
  EXPECT_EQ(s.sentences[0].sources, std::vector<std::string>{"a"});
  EXPECT_DOUBLE_EQ(s.abstractive_ratio, 0.0);
}

TEST(Pipeline, ThreeCopiesCollapseToOneDocumentSummary) {
  const auto& c = corpus();
  std::vector<Document> docs;
  for (const char* suffix : {"#0", "#1", "#2"}) {
    docs.push_back(make_document("d" + std::string(suffix), c.documents[0].raw_text, std::nullopt));
  }
  const auto three = summarize_group(docs, fast_config());
  const auto one = summarize_group(std::span(docs).first(1), fast_config());
  ASSERT_EQ(three.sentences.size(), one.sentences.size());
  for (std::size_t i = 0; i < one.sentences.size(); ++i) {
    EXPECT_EQ(three.sentences[i].text, one.sentences[i].text);
    EXPECT_EQ(three.sentences[i].sources, (std::vector<std::string>{"d#0", "d#1", "d#2"}));
    EXPECT_EQ(three.sentences[i].origin.size(), 3 * one.sentences[i].origin.size());
  }
}

TEST(Pipeline, MissingInputRejected) {
  EXPECT_THROW(summarize_group({}, fast_config()), InvalidArgument);
  const std::vector<Document> empty{make_document("e", "", std::nullopt)};
  EXPECT_THROW(summarize_group(empty, fast_config()), InvalidArgument);
  auto bad = fast_config();
  bad.d_sim = 1.5;
  const std::vector<Document> docs{make_document("a", "One sentence here.", std::nullopt)};
  EXPECT_THROW(summarize_group(docs, bad), InvalidArgument);
}

TEST(Pipeline, DeterministicAcrossRunsAndWorkerCounts) {
  const auto ds = generate_groups(corpus().documents, 8, 2, 11);
  for (const auto& g : ds.groups) {
    const auto docs = group_documents(g);
    auto cfg = fast_config();
    const auto a = to_json(summarize_group(docs, cfg)).dump();
    const auto b = to_json(summarize_group(docs, cfg)).dump();
    cfg.workers = 7;
    const auto c = to_json(summarize_group(docs, cfg));
    EXPECT_EQ(a, b);
    auto a_json = nlohmann::ordered_json::parse(a);
    a_json["config"].erase("workers");
    auto c_json = c;
    c_json["config"].erase("workers");
    EXPECT_EQ(a_json.dump(), c_json.dump());
  }
}

TEST(Pipeline, InvariantsOnGeneratedGroups) {
  const auto ds = generate_groups(corpus().documents, 10, 6, 3);
  std::size_t fused = 0;
  for (const auto& g : ds.groups) {
    const auto docs = group_documents(g);
    const auto s = summarize_group(docs, fast_config());
    ASSERT_FALSE(s.sentences.empty());
    EXPECT_EQ(testing::check_copy_consistency(g, s), "");
    EXPECT_EQ(testing::check_pairwise_distinct(s, 0.3), "");
    EXPECT_EQ(testing::check_coverage(s), "");
    std::size_t n_fused = 0;
    for (const auto& sent : s.sentences) {
      EXPECT_FALSE(sent.sources.empty());
      EXPECT_FALSE(sent.text.empty());
      n_fused += sent.kind == SentenceKind::kFused;
    }
    EXPECT_DOUBLE_EQ(s.abstractive_ratio, static_cast<double>(n_fused) / static_cast<double>(s.sentences.size()));
    fused += n_fused;
    EXPECT_GE(s.stats.cluster_stages.size(), 1u);
  }
  EXPECT_GT(fused, 0u);
}

TEST(Pipeline, SourcesFollowGroupOrder) {
  const auto ds = generate_groups(corpus().documents, 10, 2, 8);
  for (const auto& g : ds.groups) {
    const auto docs = group_documents(g);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < docs.size(); ++i) pos[docs[i].id] = i;
    const auto s = summarize_group(docs, fast_config());
    std::size_t prev_first = 0;
    for (const auto& sent : s.sentences) {
      for (std::size_t i = 1; i < sent.sources.size(); ++i) EXPECT_LT(pos[sent.sources[i - 1]], pos[sent.sources[i]]);
      EXPECT_GE(pos[sent.sources.front()], prev_first);
      prev_first = pos[sent.sources.front()];
    }
  }
}

TEST(Pipeline, SummaryJsonRoundTrip) {
  const auto ds = generate_groups(corpus().documents, 6, 1, 2);
  const auto docs = group_documents(ds.groups[0]);
  const auto s = summarize_group(docs, fast_config());
  const auto j = to_json(s);
  const auto back = summary_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(back.text(), s.text());
}

TEST(Config, JsonRoundTripAndValidation) {
  PipelineConfig c;
  c.damping = 0.7;
  c.fusion.k = 4;
  c.fusion.allow_repeats = true;
  c.mode = SelectionMode::kTopPercent;
  const auto j = to_json(c);
  const auto back = config_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_THROW(config_from_json(nlohmann::json{{"dampng", 0.8}}), InvalidArgument);
  EXPECT_EQ(to_json(config_from_json(nlohmann::json::object())).dump(), to_json(PipelineConfig{}).dump());
}

TEST(ParallelFor, RunsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 5) throw InvalidArgument("boom");
                            }),
               InvalidArgument);
}

TEST(Rescaled, NormAndZero) {
  const std::vector<double> v{3.0, 4.0};
  const auto r = rescaled(v, 2.0);
  EXPECT_NEAR(r[0], 1.2, 1e-15);
  EXPECT_NEAR(r[1], 1.6, 1e-15);
  const std::vector<double> z{0.0, 0.0};
  EXPECT_EQ(rescaled(z, 2.0), z);
}

}  // namespace
}  // namespace hetsum
