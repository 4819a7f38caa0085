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
#include <optional>
#include <string_view>
#include <vector>

#include "wpgof/bootstrap.hpp"

namespace wpgof::cli {

// Power-study configuration, one `key = value` per entry:
//
//   alternatives = [poisson(5), zip(0.8, 3), nb(1, 0.5)]
//   sample_sizes = [30, 50]
//   statistics   = all            # or [t1-fit, ad, ...]
//   replications = 2000
//   alpha        = 0.05
//   seed         = 1
//
// Lists may span several lines. `alternatives` and `sample_sizes` are
// required; the rest default to all statistics, 50000, 0.05 and 1.
PowerStudyConfig parse_config(std::istream& in, double laplace_a = 1.0);

PowerStudyConfig load_config(const std::filesystem::path& path, double laplace_a = 1.0);

// paper-n30, paper-n50, paper-n100 and desk.
std::optional<PowerStudyConfig> preset(std::string_view name, double laplace_a = 1.0);
std::vector<std::string_view> preset_names();

// The alternatives of the published power tables, in table order.
std::vector<AlternativeSpec> paper_alternatives();

}  // namespace wpgof::cli
