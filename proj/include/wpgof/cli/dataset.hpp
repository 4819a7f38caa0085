// Copyright 2026 The wpgof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "wpgof/empirical.hpp"

namespace wpgof::cli {

// Reads count data in either of two layouts, chosen by the first data line:
//   raw        one non-negative integer per line
//   frequency  `value,count` per line, values unique
// Blank lines and `#` comments are ignored. Errors carry the line number.
CountSample parse_dataset(std::istream& in);

CountSample load_dataset(const std::filesystem::path& path);

}  // namespace wpgof::cli
