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

#include "hetsum/eval.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>

#include "hetsum/corpus.hpp"
#include "hetsum/error.hpp"
#include "hetsum/resources.hpp"

namespace hetsum {
namespace {

RougeScore make_score(double hits, double ref_total, double cand_total) {
  RougeScore s;
  if (ref_total > 0) s.recall = hits / ref_total;
  if (cand_total > 0) s.precision = hits / cand_total;
  if (s.recall + s.precision > 0) s.f1 = 2 * s.recall * s.precision / (s.recall + s.precision);
  return s;
}

std::map<std::vector<std::string>, std::size_t> ngram_counts(std::span<const std::string> tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++counts[{tokens.begin() + i, tokens.begin() + i + n}];
  return counts;
}

std::vector<std::vector<std::uint32_t>> lcs_table(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::vector<std::uint32_t>> t(a.size() + 1, std::vector<std::uint32_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

// Reference positions on one LCS of (ref, cand), preferring matches late in
// both sequences during backtracking.
std::vector<std::size_t> lcs_positions(std::span<const std::string> ref, std::span<const std::string> cand) {
  const auto t = lcs_table(ref, cand);
  std::vector<std::size_t> out;
  std::size_t i = ref.size(), j = cand.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == cand[j - 1]) {
      out.push_back(i - 1);
      --i;
      --j;
    } else if (t[i - 1][j] >= t[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> sentence_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : segment_sentences(text)) {
    auto toks = rouge_tokens(s);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

std::string key_of(const nlohmann::json& j) {
  for (const char* k : {"id", "group_id"}) {
    if (!j.contains(k)) continue;
    const auto& v = j[k];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
  }
  return {};
}

std::string text_of(const nlohmann::json& j, std::size_t line) {
  for (const char* k : {"summary", "text", "gold_summary"}) {
    if (j.contains(k) && j[k].is_string()) return j[k].get<std::string>();
  }
  throw ParseError("record has no summary/text/gold_summary string", line);
}

std::vector<std::pair<std::string, std::string>> read_records(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!j.is_object()) throw ParseError("expected a JSON object", lineno);
    out.emplace_back(key_of(j), text_of(j, lineno));
  }
  return out;
}

nlohmann::ordered_json rouge_json(const RougeScore& s) {
  return {{"recall", s.recall}, {"precision", s.precision}, {"f1", s.f1}};
}

}  // namespace

std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (!is_punctuation(t)) out.push_back(to_lower(t));
  }
  return out;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, std::size_t n) {
  if (n == 0) throw InvalidArgument("rouge_n: n must be >= 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  double hits = 0, ref_total = 0, cand_total = 0;
  for (const auto& [g, c] : ref) {
    ref_total += static_cast<double>(c);
    if (auto it = cand.find(g); it != cand.end()) hits += static_cast<double>(std::min(c, it->second));
  }
  for (const auto& [g, c] : cand) cand_total += static_cast<double>(c);
  if (ref_total == 0 || cand_total == 0) return {};
  return make_score(hits, ref_total, cand_total);
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n) {
  return rouge_n(rouge_tokens(candidate), rouge_tokens(reference), n);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  return lcs_table(a, b)[a.size()][b.size()];
}

RougeScore rouge_l(const std::vector<std::vector<std::string>>& candidate_sentences,
                   const std::vector<std::vector<std::string>>& reference_sentences) {
  std::map<std::string, std::size_t> cand_left, ref_left;
  double cand_total = 0, ref_total = 0;
  for (const auto& s : candidate_sentences) {
    for (const auto& t : s) ++cand_left[t];
    cand_total += static_cast<double>(s.size());
  }
  for (const auto& s : reference_sentences) {
    for (const auto& t : s) ++ref_left[t];
    ref_total += static_cast<double>(s.size());
  }
  if (cand_total == 0 || ref_total == 0) return {};

  double hits = 0;
  for (const auto& ref : reference_sentences) {
    std::vector<bool> in_union(ref.size(), false);
    for (const auto& cand : candidate_sentences) {
      for (std::size_t p : lcs_positions(ref, cand)) in_union[p] = true;
    }
    for (std::size_t p = 0; p < ref.size(); ++p) {
      if (!in_union[p]) continue;
      auto& r = ref_left[ref[p]];
      auto c = cand_left.find(ref[p]);
      if (r > 0 && c != cand_left.end() && c->second > 0) {
        --r;
        --c->second;
        ++hits;
      }
    }
  }
  return make_score(hits, ref_total, cand_total);
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(sentence_tokens(candidate), sentence_tokens(reference));
}

WordSet load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list " + path.string());
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(to_lower(line));
  }
  return words;
}

const WordSet& default_easy_words() {
  static const WordSet words = load_word_list(resource_path("dale_chall_easy.txt"));
  return words;
}

DaleChallCounts dale_chall_counts(std::string_view text, const WordSet& easy_words) {
  DaleChallCounts c;
  for (const auto& s : segment_sentences(text)) {
    const auto words = rouge_tokens(s);
    if (words.empty()) continue;
    ++c.sentences;
    c.words += words.size();
    for (const auto& w : words) {
      if (!easy_words.contains(w)) ++c.difficult;
    }
  }
  return c;
}

double dale_chall(const DaleChallCounts& c) {
  if (c.words == 0 || c.sentences == 0) throw InvalidArgument("dale_chall: text has no words");
  const double pct = 100.0 * static_cast<double>(c.difficult) / static_cast<double>(c.words);
  double score = 0.1579 * pct + 0.0496 * static_cast<double>(c.words) / static_cast<double>(c.sentences);
  if (pct > 5.0) score += 3.6365;
  return score;
}

double dale_chall(std::string_view text, const WordSet& easy_words) {
  return dale_chall(dale_chall_counts(text, easy_words));
}

ReadabilityReport summary_fluency(std::span<const std::string> sentences, const TokenScorer& scorer,
                                  const WordSet& easy_words) {
  ReadabilityReport r;
  std::string joined;
  double total = 0.0;
  for (const auto& s : sentences) {
    std::vector<std::string> lowered;
    for (const auto& t : tokenize(s)) lowered.push_back(to_lower(t));
    if (lowered.empty()) continue;
    total += sentence_logprob(scorer, lowered).average;
    ++r.sentence_count;
    if (!joined.empty()) joined += ' ';
    joined += s;
  }
  if (r.sentence_count == 0) throw InvalidArgument("summary_fluency: empty summary");
  r.avg_sentence_logprob = total / static_cast<double>(r.sentence_count);
  const auto counts = dale_chall_counts(joined, easy_words);
  r.dale_chall = counts.words ? dale_chall(counts) : 0.0;
  return r;
}

std::vector<EvalPair> pair_records(std::istream& candidates, std::istream& references) {
  const auto cands = read_records(candidates);
  const auto refs = read_records(references);
  std::vector<EvalPair> out;
  const bool keyed = !cands.empty() && std::all_of(cands.begin(), cands.end(), [](const auto& c) {
    return !c.first.empty();
  });
  if (keyed) {
    std::map<std::string, std::string> by_key;
    for (const auto& [k, t] : refs) by_key.emplace(k, t);
    for (const auto& [k, t] : cands) {
      auto it = by_key.find(k);
      if (it == by_key.end()) throw InvalidArgument("no reference for candidate key " + k);
      out.push_back({k, t, it->second});
    }
    return out;
  }
  if (cands.size() != refs.size()) throw InvalidArgument("candidate and reference counts differ");
  for (std::size_t i = 0; i < cands.size(); ++i) out.push_back({std::to_string(i), cands[i].second, refs[i].second});
  return out;
}

nlohmann::ordered_json evaluate_pairs(std::span<const EvalPair> pairs, std::span<const std::string> metrics,
                                      const TokenScorer* scorer, const WordSet& easy_words) {
  for (const auto& m : metrics) {
    if (m != "rouge1" && m != "rouge2" && m != "rougeL" && m != "dalechall" && m != "logprob") {
      throw InvalidArgument("unknown metric " + m);
    }
    if (m == "logprob" && !scorer) throw InvalidArgument("metric logprob needs a language model");
  }
  std::map<std::string, std::vector<double>> sums;  // metric -> summed fields
  auto items = nlohmann::ordered_json::array();
  for (const auto& p : pairs) {
    nlohmann::ordered_json item;
    item["key"] = p.key;
    for (const auto& m : metrics) {
      if (m == "rouge1" || m == "rouge2" || m == "rougeL") {
        const RougeScore s = m == "rougeL" ? rouge_l(p.candidate, p.reference)
                                           : rouge_n(p.candidate, p.reference, m == "rouge1" ? 1 : 2);
        item[m] = rouge_json(s);
        auto& acc = sums[m];
        acc.resize(3, 0.0);
        acc[0] += s.recall;
        acc[1] += s.precision;
        acc[2] += s.f1;
      } else if (m == "dalechall") {
        const auto c = dale_chall_counts(p.candidate, easy_words);
        const double v = c.words ? dale_chall(c) : 0.0;
        item[m] = v;
        sums[m].resize(1, 0.0);
        sums[m][0] += v;
      } else {
        std::vector<std::string> sentences = segment_sentences(p.candidate);
        double v = 0.0;
        if (!sentences.empty()) v = summary_fluency(sentences, *scorer, easy_words).avg_sentence_logprob;
        item[m] = v;
        sums[m].resize(1, 0.0);
        sums[m][0] += v;
      }
    }
    items.push_back(std::move(item));
  }
  nlohmann::ordered_json report;
  report["count"] = pairs.size();
  nlohmann::ordered_json mean;
  const double n = pairs.empty() ? 1.0 : static_cast<double>(pairs.size());
  for (const auto& m : metrics) {
    const auto& acc = sums[m];
    if (m.rfind("rouge", 0) == 0) {
      mean[m] = acc.empty() ? rouge_json({}) : rouge_json({acc[0] / n, acc[1] / n, acc[2] / n});
    } else {
      mean[m] = acc.empty() ? 0.0 : acc[0] / n;
    }
  }
  report["mean"] = std::move(mean);
  report["pairs"] = std::move(items);
  return report;
}

}  // namespace hetsum
