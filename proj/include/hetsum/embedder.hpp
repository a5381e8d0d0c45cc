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

#ifndef HETSUM_EMBEDDER_HPP_
#define HETSUM_EMBEDDER_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hetsum/corpus.hpp"

namespace hetsum {

using Vector = std::vector<double>;

// Anything that maps sentences to fixed-dimension vectors.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<Vector> embed_all(std::span<const Sentence> sentences) const = 0;
};

// TF-IDF over lowercased non-punctuation tokens. Columns are assigned in
// lexicographic term order so identical corpora give identical layouts.
class TfidfEmbedder : public EmbeddingProvider {
 public:
  // idf(t) = ln(1 + N / (1 + df(t))), N = number of sentences.
  static TfidfEmbedder build(std::span<const Sentence> sentences);

  // Explicit table, mainly for tests.
  explicit TfidfEmbedder(std::map<std::string, double> idf);

  std::size_t dimension() const { return idf_.size(); }
  const std::map<std::string, std::size_t>& vocabulary() const { return vocabulary_; }
  double idf(const std::string& term) const;

  // vector[t] = tf(t in s) * idf(t); out-of-vocabulary tokens are ignored.
  Vector embed(const Sentence& sentence) const;
  std::vector<Vector> embed_all(std::span<const Sentence> sentences) const override;

 private:
  std::map<std::string, std::size_t> vocabulary_;
  std::vector<double> idf_;
};

// u.v / (|u||v|); 0 when either norm vanishes. Throws on dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace hetsum

#endif  // HETSUM_EMBEDDER_HPP_
