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

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hetsum/error.hpp"
#include "hetsum/eval.hpp"
#include "oracles.hpp"

namespace hetsum {
namespace {

RougeScore run(std::string_view metric, std::string_view cand, std::string_view ref) {
  if (metric == "rougeL") return rouge_l(cand, ref);
  return rouge_n(cand, ref, metric == "rouge1" ? 1 : 2);
}

TEST(Rouge, FixtureTable) {
  for (const auto& c : testing::kRougeCases) {
    const auto s = run(c.metric, c.candidate, c.reference);
    EXPECT_NEAR(s.recall, c.recall, 1e-12) << c.name;
    EXPECT_NEAR(s.precision, c.precision, 1e-12) << c.name;
    EXPECT_NEAR(s.f1, c.f1, 1e-12) << c.name;
  }
}

TEST(Rouge, TokensDropPunctuationAndFoldCase) {
  EXPECT_EQ(rouge_tokens("The Cat, sat!"), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_THROW(rouge_n("a", "a", 0), InvalidArgument);
}

TEST(Rouge, IdenticalTextsScoreOne) {
  for (const char* t : {"a b c d", "One sentence. Another one here.", "x"}) {
    EXPECT_DOUBLE_EQ(rouge_n(t, t, 1).f1, 1.0);
    EXPECT_DOUBLE_EQ(rouge_l(t, t).f1, 1.0);
  }
}

TEST(Rouge, SingleSentenceLIsPlainLcs) {
  std::mt19937 rng(51);
  const std::vector<std::string> alphabet{"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> ref(1 + rng() % 9), cand(1 + rng() % 9);
    for (auto& t : ref) t = alphabet[rng() % alphabet.size()];
    for (auto& t : cand) t = alphabet[rng() % alphabet.size()];
    const auto lcs = lcs_length(ref, cand);
    ASSERT_EQ(lcs, testing::brute_lcs(ref, cand));
    const auto s = rouge_l(std::vector<std::vector<std::string>>{cand}, std::vector<std::vector<std::string>>{ref});
    EXPECT_NEAR(s.recall, static_cast<double>(lcs) / static_cast<double>(ref.size()), 1e-12);
    EXPECT_NEAR(s.precision, static_cast<double>(lcs) / static_cast<double>(cand.size()), 1e-12);
  }
}

TEST(Rouge, ScoresBounded) {
  std::mt19937 rng(53);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> c(1 + rng() % 3), r(1 + rng() % 3);
    for (auto* side : {&c, &r})
      for (auto& s : *side) {
        s.resize(1 + rng() % 5);
        for (auto& t : s) t = alphabet[rng() % 3];
      }
    const auto s = rouge_l(c, r);
    EXPECT_GE(s.recall, 0.0);
    EXPECT_LE(s.recall, 1.0);
    EXPECT_LE(s.precision, 1.0);
  }
}

TEST(DaleChall, Fixtures) {
  for (const auto& c : testing::kDaleChallCases) EXPECT_NEAR(dale_chall(c.text), c.score, 1e-6) << c.name;
}

TEST(DaleChall, CountsAndErrors) {
  const WordSet easy{"the", "cat"};
  const auto c = dale_chall_counts("The cat purrs. The cat.", easy);
  EXPECT_EQ(c.words, 5u);
  EXPECT_EQ(c.difficult, 1u);
  EXPECT_EQ(c.sentences, 2u);
  EXPECT_THROW(dale_chall("", easy), InvalidArgument);
  EXPECT_DOUBLE_EQ(dale_chall(DaleChallCounts{20, 1, 1}), 0.1579 * 5 + 0.0496 * 20);
}

TEST(Fluency, MeanOfSentenceAverages) {
  const std::vector<std::vector<std::string>> corpus{{"a", "b", "."}, {"b", "a", "."}};
  const auto lm = NGramLM::train(corpus, 2, 0.1);
  const std::vector<std::string> sentences{"A b.", "B a b."};
  const auto r = summary_fluency(sentences, lm, WordSet{"a", "b"});
  const std::vector<std::string> s0{"a", "b", "."}, s1{"b", "a", "b", "."};
  const double want = (sentence_logprob(lm, s0).average + sentence_logprob(lm, s1).average) / 2.0;
  EXPECT_NEAR(r.avg_sentence_logprob, want, 1e-12);
  EXPECT_EQ(r.sentence_count, 2u);
  EXPECT_NEAR(r.dale_chall, 0.0496 * 2.5, 1e-12);
}

TEST(Pairing, ByKeyAndByLine) {
  std::istringstream cand("{\"group_id\":1,\"summary\":\"b\"}\n{\"group_id\":0,\"summary\":\"a\"}\n");
  std::istringstream ref("{\"group_id\":0,\"gold_summary\":\"ra\"}\n{\"group_id\":1,\"gold_summary\":\"rb\"}\n");
  const auto p = pair_records(cand, ref);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].key, "1");
  EXPECT_EQ(p[0].reference, "rb");
  std::istringstream c2("{\"text\":\"x\"}\n"), r2("{\"id\":\"q\",\"text\":\"y\"}\n");
  const auto q = pair_records(c2, r2);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].candidate, "x");
  EXPECT_EQ(q[0].reference, "y");
  std::istringstream c3("{\"id\":\"zz\",\"text\":\"x\"}\n"), r3("{\"id\":\"q\",\"text\":\"y\"}\n");
  EXPECT_THROW(pair_records(c3, r3), InvalidArgument);
  std::istringstream c4("{\"id\":\"zz\"}\n"), r4("");
  EXPECT_THROW(pair_records(c4, r4), ParseError);
}

TEST(EvaluatePairs, MeansAndUnknownMetric) {
  const std::vector<EvalPair> pairs{{"0", "a b", "a b"}, {"1", "a", "b"}};
  const std::vector<std::string> metrics{"rouge1"};
  const auto rep = evaluate_pairs(pairs, metrics, nullptr);
  EXPECT_EQ(rep["count"], 2);
  EXPECT_DOUBLE_EQ(rep["mean"]["rouge1"]["f1"].get<double>(), 0.5);
  EXPECT_EQ(rep["pairs"].size(), 2u);
  const std::vector<std::string> bad{"bleu"};
  EXPECT_THROW(evaluate_pairs(pairs, bad, nullptr), InvalidArgument);
  const std::vector<std::string> lp{"logprob"};
  EXPECT_THROW(evaluate_pairs(pairs, lp, nullptr), InvalidArgument);
}

}  // namespace
}  // namespace hetsum
