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

#include "hetsum/resources.hpp"

#include <cstdlib>

#ifndef HETSUM_DEFAULT_RESOURCE_DIR
#define HETSUM_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace hetsum {

std::filesystem::path resource_dir() {
  if (const char* env = std::getenv("HETSUM_RESOURCE_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return HETSUM_DEFAULT_RESOURCE_DIR;
}

std::filesystem::path resource_path(std::string_view name) { return resource_dir() / name; }

}  // namespace hetsum
