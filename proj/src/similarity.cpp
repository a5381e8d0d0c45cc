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

#include "hetsum/similarity.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace hetsum {
namespace {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

Block longest_block(std::span<const std::string> a, std::size_t alo, std::size_t ahi, std::span<const std::string> b,
                    std::size_t blo, std::size_t bhi) {
  Block best{alo, blo, 0};
  // run[j] = length of the common suffix ending at a[i-1], b[j-1]
  std::vector<std::size_t> run(bhi - blo + 1, 0);
  std::vector<std::size_t> next(run.size(), 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = j - blo + 1;
      next[k] = a[i] == b[j] ? run[k - 1] + 1 : 0;
      if (next[k] > best.size) best = {i + 1 - next[k], j + 1 - next[k], next[k]};
    }
    run.swap(next);
  }
  return best;
}

}  // namespace

std::size_t matched_length(std::span<const std::string> a, std::span<const std::string> b) {
  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  std::size_t matched = 0;
  std::vector<Range> stack{{0, a.size(), 0, b.size()}};
  while (!stack.empty()) {
    const Range r = stack.back();
    stack.pop_back();
    if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
    const Block blk = longest_block(a, r.alo, r.ahi, b, r.blo, r.bhi);
    if (blk.size == 0) continue;
    matched += blk.size;
    stack.push_back({r.alo, blk.a, r.blo, blk.b});
    stack.push_back({blk.a + blk.size, r.ahi, blk.b + blk.size, r.bhi});
  }
  return matched;
}

double ratcliff_obershelp(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  // Block tie-breaking depends on argument order; a canonical order keeps
  // the score symmetric.
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
  return 2.0 * static_cast<double>(matched_length(a, b)) / static_cast<double>(a.size() + b.size());
}

}  // namespace hetsum
