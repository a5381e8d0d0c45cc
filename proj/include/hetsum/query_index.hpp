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

#ifndef HETSUM_QUERY_INDEX_HPP_
#define HETSUM_QUERY_INDEX_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetsum/corpus.hpp"
#include "hetsum/pipeline.hpp"
#include "json.hpp"

namespace hetsum {

struct Posting {
  std::size_t group = 0;
  std::size_t sentence = 0;  // position within the group summary
  std::string text;
  std::vector<std::string> doc_ids;

  bool operator==(const Posting&) const = default;
};

// Keyword -> summary sentences containing it as a token (exact, case
// insensitive). Postings are ordered by (group, sentence).
class QueryIndex {
 public:
  std::vector<Posting> query(std::string_view term) const;
  const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }

  nlohmann::ordered_json to_json() const;
  static QueryIndex from_json(const nlohmann::json& j);

 private:
  friend QueryIndex build_query_index(std::span<const GroupSummary>, std::span<const std::string>);
  std::map<std::string, std::vector<Posting>> postings_;
};

// Summaries are numbered by their position in `summaries`. Every keyword
// gets an entry, possibly empty.
QueryIndex build_query_index(std::span<const GroupSummary> summaries, std::span<const std::string> keywords);

// Every distinct non-punctuation token of the summaries, lowercased.
std::vector<std::string> summary_vocabulary(std::span<const GroupSummary> summaries);

// The documents behind a posting, in posting order. Throws when an id is
// unknown.
std::vector<const Document*> resolve_traceback(const Posting& posting, std::span<const Document> documents);

}  // namespace hetsum

#endif  // HETSUM_QUERY_INDEX_HPP_
