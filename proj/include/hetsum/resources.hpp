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

#ifndef HETSUM_RESOURCES_HPP_
#define HETSUM_RESOURCES_HPP_

#include <filesystem>
#include <string_view>

namespace hetsum {

// Directory holding lexicon.tsv and dale_chall_easy.txt. The
// HETSUM_RESOURCE_DIR environment variable overrides the build-time default.
std::filesystem::path resource_dir();
std::filesystem::path resource_path(std::string_view name);

}  // namespace hetsum

#endif  // HETSUM_RESOURCES_HPP_
