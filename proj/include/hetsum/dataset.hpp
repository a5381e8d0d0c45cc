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

#ifndef HETSUM_DATASET_HPP_
#define HETSUM_DATASET_HPP_

// Heterogeneous group generation from a single-document summarization
// corpus. The corpus is tripled, and each group draws s documents from the
// tripled pool without replacement, so a source can appear up to three
// times in one group. Groups are drawn independently.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hetsum/corpus.hpp"

namespace hetsum {

// SplitMix64. Pinned so that datasets are reproducible from (corpus, s, m,
// seed) alone:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, bound) by rejection of the biased tail. bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

inline constexpr std::size_t kCopies = 3;

struct GroupDoc {
  std::string id;         // "<source id>#<copy>"
  std::string source_id;
  std::size_t copy = 0;
  std::string text;
  std::string summary;
};

struct Group {
  std::size_t group_id = 0;
  std::vector<GroupDoc> docs;  // draw order
  std::string gold_summary;
  std::vector<std::string> sources;  // distinct source ids, first-draw order
};

struct GroupDataset {
  std::uint64_t seed = 0;
  std::size_t scale = 0;
  std::size_t pool_size = 0;  // 3 |corpus|
  std::vector<Group> groups;
};

// Draw k of n slots with a partial Fisher-Yates shuffle: for i in 0..k-1
// swap slot i with slot i + uniform(n - i). Pool slot p is copy p / |D| of
// source p % |D|. The gold summary joins member summaries with single spaces
// in draw order, one per distinct source.
GroupDataset generate_groups(std::span<const Document> corpus, std::size_t scale, std::size_t group_count,
                             std::uint64_t seed);

struct DatasetStats {
  std::size_t groups = 0;
  double mean_article_words = 0.0;  // per group, summed over members
  double mean_summary_words = 0.0;
  double mean_distinct_sources = 0.0;
};

// Words are non-punctuation tokens.
DatasetStats dataset_stats(const GroupDataset& dataset);
std::size_t word_count(std::string_view text);

// One group per line:
//   {"group_id":int,"docs":[{"id","text","summary"}],"gold_summary":str,"sources":[str]}
void write_dataset(std::ostream& out, const GroupDataset& dataset);
std::vector<Group> read_dataset(std::istream& in);

// Group members as pipeline documents (ids keep the copy suffix).
std::vector<Document> group_documents(const Group& group, const Tagger& tagger = default_tagger());

}  // namespace hetsum

#endif  // HETSUM_DATASET_HPP_
