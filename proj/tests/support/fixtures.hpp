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

#ifndef HETSUM_TESTS_FIXTURES_HPP_
#define HETSUM_TESTS_FIXTURES_HPP_

// Hand-computed metric fixtures shared by the unit and acceptance tests.

#include <array>
#include <string_view>

namespace hetsum::testing {

struct RougeCase {
  std::string_view name;
  std::string_view metric;  // rouge1, rouge2, rougeL
  std::string_view candidate;
  std::string_view reference;
  double recall, precision, f1;
};

inline constexpr std::array<RougeCase, 10> kRougeCases{{
    {"unigram_subset", "rouge1", "the cat sat on the mat", "the cat sat", 1.0, 0.5, 2.0 / 3.0},
    {"bigram_subset", "rouge2", "the cat sat on the mat", "the cat sat", 1.0, 0.4, 4.0 / 7.0},
    {"unigram_clipping", "rouge1", "the the the the", "the cat", 0.5, 0.25, 1.0 / 3.0},
    {"case_and_punct", "rouge1", "A b, c.", "a b c", 1.0, 1.0, 1.0},
    {"no_bigrams", "rouge2", "cat", "the cat", 0.0, 0.0, 0.0},
    {"empty_candidate", "rouge1", "", "a", 0.0, 0.0, 0.0},
    {"lcs_one_swap", "rougeL", "police kill the gunman", "police killed the gunman", 0.75, 0.75, 0.75},
    {"lcs_reordered", "rougeL", "the gunman kill police", "police killed the gunman", 0.5, 0.5, 0.5},
    {"lcs_union", "rougeL", "Alpha beta golf hotel india. Alpha charlie india juliet echo.",
     "Alpha beta charlie delta echo.", 0.8, 0.4, 8.0 / 15.0},
    {"lcs_union_clipped", "rougeL", "A b.", "A b. A b.", 0.5, 1.0, 2.0 / 3.0},
}};

struct DaleChallCase {
  std::string_view name;
  std::string_view text;  // scored against the bundled easy-word list
  double score;
};

// Difficult words below are made up (or rare) and absent from the list.
inline constexpr std::array<DaleChallCase, 5> kDaleChallCases{{
    {"all_easy", "The cat is very big.", 0.248},
    {"all_difficult", "Quaffle zorblat pernicious obfuscate cromulent snorbish flibber wuzzle grommet plinth.",
     19.9225},
    {"five_percent_boundary",
     "The boy and the girl saw a red ball in the park with my friend on a sunny day plinth.", 1.7815},
    {"two_sentences", "The dog ran to school. We saw a cat plinth.", 5.4635},
    {"three_sentences", "The cat sat plinth. The dog ran wuzzle. We saw a grommet.", 7.7824},
}};

}  // namespace hetsum::testing

#endif  // HETSUM_TESTS_FIXTURES_HPP_
