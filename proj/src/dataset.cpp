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

#include "hetsum/dataset.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "hetsum/error.hpp"
#include "json.hpp"

namespace hetsum {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("uniform: bound must be positive");
  // Largest multiple of bound representable; values at or above it are
  // redrawn.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

GroupDataset generate_groups(std::span<const Document> corpus, std::size_t scale, std::size_t group_count,
                             std::uint64_t seed) {
  if (scale == 0) throw InvalidArgument("generate_groups: scale must be >= 1");
  const std::size_t pool = kCopies * corpus.size();
  if (pool < scale) {
    throw InvalidArgument("generate_groups: corpus too small (" + std::to_string(corpus.size()) +
                          " documents, scale " + std::to_string(scale) + ")");
  }
  for (const auto& d : corpus) {
    if (!d.gold_summary) throw InvalidArgument("generate_groups: document " + d.id + " has no summary");
  }

  GroupDataset out;
  out.seed = seed;
  out.scale = scale;
  out.pool_size = pool;
  SplitMix64 rng(seed);
  std::vector<std::size_t> slots(pool);
  for (std::size_t g = 0; g < group_count; ++g) {
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    Group group;
    group.group_id = g;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < scale; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform(pool - i));
      std::swap(slots[i], slots[j]);
      const std::size_t source = slots[i] % corpus.size();
      const std::size_t copy = slots[i] / corpus.size();
      const Document& doc = corpus[source];
      group.docs.push_back({doc.id + "#" + std::to_string(copy), doc.id, copy, doc.raw_text, *doc.gold_summary});
      if (seen.insert(source).second) {
        group.sources.push_back(doc.id);
        if (!doc.gold_summary->empty()) {
          if (!group.gold_summary.empty()) group.gold_summary += ' ';
          group.gold_summary += *doc.gold_summary;
        }
      }
    }
    out.groups.push_back(std::move(group));
  }
  return out;
}

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  for (const auto& t : tokenize(text)) {
    if (!is_punctuation(t)) ++n;
  }
  return n;
}

DatasetStats dataset_stats(const GroupDataset& dataset) {
  DatasetStats s;
  s.groups = dataset.groups.size();
  if (s.groups == 0) return s;
  double article = 0.0, summary = 0.0, sources = 0.0;
  for (const auto& g : dataset.groups) {
    for (const auto& d : g.docs) article += static_cast<double>(word_count(d.text));
    summary += static_cast<double>(word_count(g.gold_summary));
    sources += static_cast<double>(g.sources.size());
  }
  const double m = static_cast<double>(s.groups);
  s.mean_article_words = article / m;
  s.mean_summary_words = summary / m;
  s.mean_distinct_sources = sources / m;
  return s;
}

void write_dataset(std::ostream& out, const GroupDataset& dataset) {
  for (const auto& g : dataset.groups) {
    nlohmann::ordered_json j;
    j["group_id"] = g.group_id;
    auto docs = nlohmann::ordered_json::array();
    for (const auto& d : g.docs) {
      nlohmann::ordered_json jd;
      jd["id"] = d.id;
      jd["text"] = d.text;
      jd["summary"] = d.summary;
      docs.push_back(std::move(jd));
    }
    j["docs"] = std::move(docs);
    j["gold_summary"] = g.gold_summary;
    j["sources"] = g.sources;
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

std::vector<Group> read_dataset(std::istream& in) {
  std::vector<Group> groups;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Group g;
      g.group_id = j.at("group_id").get<std::size_t>();
      for (const auto& jd : j.at("docs")) {
        GroupDoc d;
        d.id = jd.at("id").get<std::string>();
        d.text = jd.at("text").get<std::string>();
        d.summary = jd.value("summary", std::string());
        const auto hash = d.id.rfind('#');
        d.source_id = hash == std::string::npos ? d.id : d.id.substr(0, hash);
        if (hash != std::string::npos) d.copy = std::stoul(d.id.substr(hash + 1));
        g.docs.push_back(std::move(d));
      }
      g.gold_summary = j.value("gold_summary", std::string());
      g.sources = j.value("sources", std::vector<std::string>{});
      groups.push_back(std::move(g));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    } catch (const std::logic_error& e) {
      throw ParseError(std::string("bad document id: ") + e.what(), lineno);
    }
  }
  if (in.bad()) throw IoError("read_dataset: read failure");
  return groups;
}

std::vector<Document> group_documents(const Group& group, const Tagger& tagger) {
  std::vector<Document> docs;
  docs.reserve(group.docs.size());
  for (const auto& d : group.docs) docs.push_back(make_document(d.id, d.text, d.summary, tagger));
  return docs;
}

}  // namespace hetsum
