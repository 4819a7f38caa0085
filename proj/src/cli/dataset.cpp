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

#include "wpgof/cli/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wpgof/error.hpp"

namespace wpgof::cli {
namespace {

// Guards against frequency files that would expand to an absurd sample.
constexpr std::int64_t kMaxObservations = 100'000'000;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_count(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(std::string(what) + " '" + std::string(field) + "' is not an integer", line);
  if (v < 0) throw ParseError(std::string(what) + " must be non-negative", line);
  return v;
}

}  // namespace

CountSample parse_dataset(std::istream& in) {
  enum class Layout { unknown, raw, frequency } layout = Layout::unknown;
  std::vector<std::int64_t> raw;
  std::vector<std::pair<std::int64_t, std::int64_t>> table;
  std::vector<std::size_t> table_lines;
  std::int64_t total = 0;

  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    std::string_view s = text;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    const auto comma = s.find(',');
    const Layout here = comma == std::string_view::npos ? Layout::raw : Layout::frequency;
    if (layout == Layout::unknown) layout = here;
    if (here != layout)
      throw ParseError(layout == Layout::raw ? "expected a single value, got 'value,count'"
                                             : "expected 'value,count'",
                       line);

    if (layout == Layout::raw) {
      raw.push_back(parse_count(s, line, "value"));
      ++total;
    } else {
      const auto rest = s.substr(comma + 1);
      if (rest.find(',') != std::string_view::npos)
        throw ParseError("expected 'value,count', got more fields", line);
      const auto value = parse_count(s.substr(0, comma), line, "value");
      const auto count = parse_count(rest, line, "count");
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i].first == value)
          throw ParseError("value " + std::to_string(value) + " already listed on line " +
                               std::to_string(table_lines[i]),
                           line);
      table.emplace_back(value, count);
      table_lines.push_back(line);
      total += count;
    }
    if (total > kMaxObservations) throw ParseError("dataset exceeds 10^8 observations", line);
  }

  if (total == 0) throw ParseError("dataset has no observations");
  if (layout == Layout::raw) return CountSample(std::move(raw));
  return CountSample::from_frequencies(table);
}

CountSample load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset '" + path.string() + "'");
  try {
    return parse_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace wpgof::cli
