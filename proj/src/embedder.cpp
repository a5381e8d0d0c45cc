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

#include "hetsum/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hetsum/error.hpp"

namespace hetsum {

TfidfEmbedder TfidfEmbedder::build(std::span<const Sentence> sentences) {
  if (sentences.empty()) throw InvalidArgument("cannot build an embedder from an empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& s : sentences) {
    std::set<std::string_view> seen;
    for (const auto& t : s.tokens) {
      if (t.pos == PosTag::kPunct || is_punctuation(t.lower)) continue;
      if (seen.insert(t.lower).second) ++df[t.lower];
    }
  }
  const double n = static_cast<double>(sentences.size());
  std::map<std::string, double> idf;
  for (const auto& [term, count] : df) idf.emplace(term, std::log(1.0 + n / (1.0 + static_cast<double>(count))));
  return TfidfEmbedder(std::move(idf));
}

TfidfEmbedder::TfidfEmbedder(std::map<std::string, double> idf) {
  idf_.reserve(idf.size());
  for (const auto& [term, weight] : idf) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) throw InvalidArgument("idf weights must be finite and >= 0");
    vocabulary_.emplace(term, idf_.size());
    idf_.push_back(weight);
  }
}

double TfidfEmbedder::idf(const std::string& term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? 0.0 : idf_[it->second];
}

Vector TfidfEmbedder::embed(const Sentence& sentence) const {
  Vector v(idf_.size(), 0.0);
  for (const auto& t : sentence.tokens) {
    auto it = vocabulary_.find(t.lower);
    if (it != vocabulary_.end()) v[it->second] += 1.0;
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= idf_[i];
  return v;
}

std::vector<Vector> TfidfEmbedder::embed_all(std::span<const Sentence> sentences) const {
  std::vector<Vector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(embed(s));
  return out;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidArgument("cosine: dimension mismatch");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

}  // namespace hetsum
