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

#ifndef HETSUM_NGRAM_LM_HPP_
#define HETSUM_NGRAM_LM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetsum {

inline constexpr std::string_view kBeginMarker = "<s>";
inline constexpr std::string_view kEndMarker = "</s>";

// Probabilities are clamped to [kMinProb, kMaxProb] before taking logs so
// that path costs built on 1/log P stay bounded.
inline constexpr double kMinProb = 1e-8;
inline constexpr double kMaxProb = 1.0 - 1e-8;

double clamped_log(double p);

// Conditional token scorer: natural-log probability of each candidate given
// a prefix. Implementations must return clamped values.
class TokenScorer {
 public:
  virtual ~TokenScorer() = default;

  virtual std::vector<double> logprobs(std::span<const std::string> prefix,
                                       std::span<const std::string> candidates) const = 0;

  // Number of trailing prefix tokens that influence the result; 0 means the
  // whole prefix matters.
  virtual std::size_t context_size() const = 0;

  double token_logprob(std::span<const std::string> prefix, const std::string& token) const;
};

struct SentenceLogProb {
  double sum = 0.0;
  double average = 0.0;
  std::size_t length = 0;
};

// Chain-rule sum of token log probabilities from an empty (begin-padded)
// prefix; the end marker is not scored. Throws on an empty sequence.
SentenceLogProb sentence_logprob(const TokenScorer& scorer, std::span<const std::string> tokens);

// Add-k smoothed n-gram model with <s> padding and a </s> end marker:
//   P(t | ctx) = (c(ctx, t) + k) / (c(ctx) + k V)
// where V counts distinct training tokens plus </s>.
class NGramLM : public TokenScorer {
 public:
  static constexpr int kFormatVersion = 1;

  static NGramLM train(std::span<const std::vector<std::string>> sequences, std::size_t order = 3,
                       double smoothing_k = 0.01);

  std::size_t order() const { return order_; }
  double smoothing_k() const { return smoothing_k_; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::set<std::string>& vocabulary() const { return vocab_; }

  // Unclamped conditional probability using the last order-1 prefix tokens.
  double probability(std::span<const std::string> prefix, const std::string& token) const;
  // Count of (context, token) and context total, for inspection.
  std::uint64_t count(std::span<const std::string> context, const std::string& token) const;

  std::vector<double> logprobs(std::span<const std::string> prefix,
                               std::span<const std::string> candidates) const override;
  std::size_t context_size() const override { return order_ - 1; }

  // Versioned JSON dump, stable byte-for-byte for identical models.
  std::string serialize() const;
  static NGramLM deserialize(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static NGramLM load(const std::filesystem::path& path);

 private:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::map<std::string, std::uint64_t> next;
  };

  NGramLM(std::size_t order, double smoothing_k) : order_(order), smoothing_k_(smoothing_k) {}

  std::string context_key(std::span<const std::string> prefix) const;

  std::size_t order_;
  double smoothing_k_;
  std::set<std::string> vocab_;
  std::map<std::string, ContextCounts> counts_;
};

}  // namespace hetsum

#endif  // HETSUM_NGRAM_LM_HPP_
