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

#ifndef HETSUM_SIMILARITY_HPP_
#define HETSUM_SIMILARITY_HPP_

#include <cstddef>
#include <span>
#include <string>

namespace hetsum {

// Gestalt pattern matching over token sequences: 2 M / (|a| + |b|), where M
// is the total length of blocks found by taking the longest common
// contiguous block and recursing on both flanks. Among equally long blocks
// the one starting earliest in the lexicographically smaller sequence, then
// in the other, wins; this keeps the score symmetric. Two empty sequences
// score 1.
double ratcliff_obershelp(std::span<const std::string> a, std::span<const std::string> b);

// M alone, with ties resolved earliest in `a`, then in `b`.
std::size_t matched_length(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace hetsum

#endif  // HETSUM_SIMILARITY_HPP_
