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

#include "hetsum/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hetsum/error.hpp"
#include "json.hpp"

namespace hetsum {
namespace {

using json = nlohmann::json;

constexpr char kSeparator = '\x1f';
constexpr std::string_view kFormatName = "hetsum.ngram";

std::vector<std::string> split_key(const std::string& key, std::size_t parts) {
  std::vector<std::string> out;
  if (parts == 0) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = key.find(kSeparator, start);
    out.push_back(key.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

double clamped_log(double p) { return std::log(std::clamp(p, kMinProb, kMaxProb)); }

double TokenScorer::token_logprob(std::span<const std::string> prefix, const std::string& token) const {
  return logprobs(prefix, std::span<const std::string>(&token, 1)).front();
}

SentenceLogProb sentence_logprob(const TokenScorer& scorer, std::span<const std::string> tokens) {
  if (tokens.empty()) throw InvalidArgument("sentence_logprob: empty token sequence");
  SentenceLogProb out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.sum += scorer.token_logprob(tokens.first(i), tokens[i]);
  }
  out.length = tokens.size();
  out.average = out.sum / static_cast<double>(out.length);
  return out;
}

NGramLM NGramLM::train(std::span<const std::vector<std::string>> sequences, std::size_t order,
                       double smoothing_k) {
  if (order < 1) throw InvalidArgument("n-gram order must be >= 1");
  if (!(smoothing_k > 0.0) || !std::isfinite(smoothing_k)) throw InvalidArgument("smoothing_k must be > 0");
  NGramLM lm(order, smoothing_k);
  bool any = false;
  for (const auto& seq : sequences) {
    if (seq.empty()) continue;
    any = true;
    std::vector<std::string> padded(order - 1, std::string(kBeginMarker));
    padded.insert(padded.end(), seq.begin(), seq.end());
    padded.emplace_back(kEndMarker);
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      const auto prefix = std::span<const std::string>(padded).first(i);
      auto& ctx = lm.counts_[lm.context_key(prefix)];
      ++ctx.total;
      ++ctx.next[padded[i]];
      lm.vocab_.insert(padded[i]);
    }
  }
  if (!any) throw InvalidArgument("cannot train a language model on an empty corpus");
  return lm;
}

std::string NGramLM::context_key(std::span<const std::string> prefix) const {
  const std::size_t width = order_ - 1;
  std::string key;
  for (std::size_t i = 0; i < width; ++i) {
    // Position i of the context window, counting from its left edge.
    const std::size_t missing = width > prefix.size() ? width - prefix.size() : 0;
    if (i) key.push_back(kSeparator);
    if (i < missing) {
      key += kBeginMarker;
    } else {
      key += prefix[prefix.size() - width + i];
    }
  }
  return key;
}

double NGramLM::probability(std::span<const std::string> prefix, const std::string& token) const {
  const double k = smoothing_k_;
  const double v = static_cast<double>(vocab_.size());
  auto it = counts_.find(context_key(prefix));
  if (it == counts_.end()) return k / (k * v);
  double c = 0.0;
  if (auto n = it->second.next.find(token); n != it->second.next.end()) c = static_cast<double>(n->second);
  return (c + k) / (static_cast<double>(it->second.total) + k * v);
}

std::uint64_t NGramLM::count(std::span<const std::string> context, const std::string& token) const {
  auto it = counts_.find(context_key(context));
  if (it == counts_.end()) return 0;
  auto n = it->second.next.find(token);
  return n == it->second.next.end() ? 0 : n->second;
}

std::vector<double> NGramLM::logprobs(std::span<const std::string> prefix,
                                      std::span<const std::string> candidates) const {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(clamped_log(probability(prefix, c)));
  return out;
}

std::string NGramLM::serialize() const {
  json contexts = json::array();
  for (const auto& [key, ctx] : counts_) {
    json next = json::object();
    for (const auto& [token, n] : ctx.next) next[token] = n;
    contexts.push_back({{"context", split_key(key, order_ - 1)}, {"total", ctx.total}, {"next", std::move(next)}});
  }
  json doc = {{"format", kFormatName},       {"version", kFormatVersion},
              {"order", order_},             {"smoothing_k", smoothing_k_},
              {"vocabulary", vocab_},        {"contexts", std::move(contexts)}};
  return doc.dump(1) + "\n";
}

NGramLM NGramLM::deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("language model: ") + e.what(), 0);
  }
  try {
    if (doc.at("format").get<std::string>() != kFormatName) throw ParseError("not a hetsum n-gram model", 0);
    if (doc.at("version").get<int>() != kFormatVersion) throw ParseError("unsupported model version", 0);
    NGramLM lm(doc.at("order").get<std::size_t>(), doc.at("smoothing_k").get<double>());
    if (lm.order_ < 1 || !(lm.smoothing_k_ > 0.0)) throw ParseError("bad model parameters", 0);
    for (const auto& t : doc.at("vocabulary")) lm.vocab_.insert(t.get<std::string>());
    for (const auto& c : doc.at("contexts")) {
      const auto ctx_tokens = c.at("context").get<std::vector<std::string>>();
      if (ctx_tokens.size() != lm.order_ - 1) throw ParseError("context width does not match order", 0);
      auto& ctx = lm.counts_[lm.context_key(ctx_tokens)];
      ctx.total = c.at("total").get<std::uint64_t>();
      for (const auto& [token, n] : c.at("next").items()) ctx.next[token] = n.get<std::uint64_t>();
    }
    return lm;
  } catch (const json::exception& e) {
    throw ParseError(std::string("language model: ") + e.what(), 0);
  }
}

void NGramLM::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize();
  if (!out) throw IoError("write failure on " + path.string());
}

NGramLM NGramLM::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace hetsum
