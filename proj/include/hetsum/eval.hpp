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

#ifndef HETSUM_EVAL_HPP_
#define HETSUM_EVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetsum/ngram_lm.hpp"
#include "json.hpp"

namespace hetsum {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Lowercased tokens with punctuation tokens removed.
std::vector<std::string> rouge_tokens(std::string_view text);

// Clipped n-gram overlap. Either side without n-grams scores 0.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n);
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, std::size_t n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Summary-level ROUGE-L. Both texts are split into sentences; for each
// reference sentence the union of its LCS hits against every candidate
// sentence is taken, and each hit is clipped by the remaining unigram
// counts of both summaries (the ROUGE-1.5.5 convention).
RougeScore rouge_l(std::string_view candidate, std::string_view reference);
RougeScore rouge_l(const std::vector<std::vector<std::string>>& candidate_sentences,
                   const std::vector<std::vector<std::string>>& reference_sentences);

using WordSet = std::set<std::string, std::less<>>;

// One lowercased word per line; blank lines and '#' comments skipped.
WordSet load_word_list(const std::filesystem::path& path);
// resources/dale_chall_easy.txt, loaded once.
const WordSet& default_easy_words();

struct DaleChallCounts {
  std::size_t words = 0;
  std::size_t difficult = 0;
  std::size_t sentences = 0;
};

DaleChallCounts dale_chall_counts(std::string_view text, const WordSet& easy_words);
// 0.1579 * pct_difficult + 0.0496 * words / sentences, + 3.6365 when more
// than 5% of words are difficult.
double dale_chall(const DaleChallCounts& counts);
double dale_chall(std::string_view text, const WordSet& easy_words = default_easy_words());

struct ReadabilityReport {
  double dale_chall = 0.0;
  double avg_sentence_logprob = 0.0;
  std::size_t sentence_count = 0;
};

// Mean over sentences of the per-token average log probability of the
// lowercased tokens, plus Dale-Chall over the joined text.
ReadabilityReport summary_fluency(std::span<const std::string> sentences, const TokenScorer& scorer,
                                  const WordSet& easy_words = default_easy_words());

struct EvalPair {
  std::string key;
  std::string candidate;
  std::string reference;
};

// Reads JSONL records keyed by "id" or "group_id" with text in the first of
// "summary", "text", "gold_summary". Pairs by key, or by line order when
// the candidate file carries no keys.
std::vector<EvalPair> pair_records(std::istream& candidates, std::istream& references);

// Metric names: rouge1, rouge2, rougeL, dalechall, logprob. logprob needs a
// scorer. The report holds per-metric means and the per-pair values.
nlohmann::ordered_json evaluate_pairs(std::span<const EvalPair> pairs, std::span<const std::string> metrics,
                                      const TokenScorer* scorer, const WordSet& easy_words = default_easy_words());

}  // namespace hetsum

#endif  // HETSUM_EVAL_HPP_
