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

#include "hetsum/query_index.hpp"

#include <set>

#include "hetsum/error.hpp"

namespace hetsum {
namespace {

std::set<std::string> sentence_terms(const SummarySentence& s) {
  std::set<std::string> terms;
  for (const auto& t : tokenize(s.text)) {
    if (!is_punctuation(t)) terms.insert(to_lower(t));
  }
  return terms;
}

}  // namespace

std::vector<Posting> QueryIndex::query(std::string_view term) const {
  auto it = postings_.find(to_lower(term));
  if (it == postings_.end()) return {};
  return it->second;
}

nlohmann::ordered_json QueryIndex::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "hetsum.index";
  j["version"] = 1;
  nlohmann::ordered_json terms = nlohmann::ordered_json::object();
  for (const auto& [term, list] : postings_) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : list) {
      arr.push_back({{"group", p.group}, {"sentence", p.sentence}, {"text", p.text}, {"docs", p.doc_ids}});
    }
    terms[term] = std::move(arr);
  }
  j["postings"] = std::move(terms);
  return j;
}

QueryIndex QueryIndex::from_json(const nlohmann::json& j) {
  QueryIndex index;
  try {
    if (j.at("format").get<std::string>() != "hetsum.index" || j.at("version").get<int>() != 1) {
      throw ParseError("unsupported index format", 0);
    }
    for (const auto& [term, arr] : j.at("postings").items()) {
      auto& list = index.postings_[term];
      for (const auto& p : arr) {
        list.push_back({p.at("group").get<std::size_t>(), p.at("sentence").get<std::size_t>(),
                        p.at("text").get<std::string>(), p.at("docs").get<std::vector<std::string>>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad index: ") + e.what(), 0);
  }
  return index;
}

QueryIndex build_query_index(std::span<const GroupSummary> summaries, std::span<const std::string> keywords) {
  if (keywords.empty()) throw InvalidArgument("build_query_index: no keywords");
  QueryIndex index;
  std::set<std::string> wanted;
  for (const auto& k : keywords) {
    wanted.insert(to_lower(k));
    index.postings_[to_lower(k)];
  }
  for (std::size_t g = 0; g < summaries.size(); ++g) {
    const auto& sentences = summaries[g].sentences;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      for (const auto& term : sentence_terms(sentences[i])) {
        if (wanted.contains(term)) index.postings_[term].push_back({g, i, sentences[i].text, sentences[i].sources});
      }
    }
  }
  return index;
}

std::vector<std::string> summary_vocabulary(std::span<const GroupSummary> summaries) {
  std::set<std::string> vocab;
  for (const auto& g : summaries) {
    for (const auto& s : g.sentences) vocab.merge(sentence_terms(s));
  }
  return {vocab.begin(), vocab.end()};
}

std::vector<const Document*> resolve_traceback(const Posting& posting, std::span<const Document> documents) {
  std::vector<const Document*> out;
  for (const auto& id : posting.doc_ids) {
    const Document* found = nullptr;
    for (const auto& d : documents) {
      if (d.id == id) {
        found = &d;
        break;
      }
    }
    if (!found) throw InvalidArgument("traceback id not found: " + id);
    out.push_back(found);
  }
  return out;
}

}  // namespace hetsum
