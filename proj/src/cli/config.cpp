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

#include "wpgof/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <string>

#include "wpgof/error.hpp"

namespace wpgof::cli {
namespace {

constexpr std::array<std::string_view, 6> kKeys{"alternatives", "sample_sizes", "statistics",
                                                "replications", "alpha",        "seed"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

// Splits on commas outside parentheses; `[a(1,2), b]` -> {"a(1,2)", "b"}.
std::vector<std::string> list_items(const Entry& e, std::string_view key) {
  std::string_view v = trim(e.value);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw ParseError("'" + std::string(key) + "' must be a [..] list", e.line);
  v = v.substr(1, v.size() - 2);
  std::vector<std::string> items;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || (v[i] == ',' && depth == 0)) {
      const auto item = trim(v.substr(start, i - start));
      if (!item.empty()) items.emplace_back(item);
      else if (i < v.size() || !items.empty()) throw ParseError("empty item in '" + std::string(key) + "'", e.line);
      start = i + 1;
    } else if (v[i] == '(') {
      ++depth;
    } else if (v[i] == ')') {
      --depth;
    }
  }
  return items;
}

template <class T>
T parse_number(std::string_view text, std::string_view key, std::size_t line) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("'" + std::string(key) + "': cannot read '" + std::string(text) + "'", line);
  return v;
}

}  // namespace

PowerStudyConfig parse_config(std::istream& in, double laplace_a) {
  std::map<std::string, Entry, std::less<>> entries;
  std::vector<std::string> unknown;

  std::string text;
  std::string* open_list = nullptr;  // value still waiting for its closing ']'
  std::size_t open_line = 0;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view s = text;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (open_list) {
      // List items never contain '='; this is the next entry.
      if (s.find('=') != std::string_view::npos) throw ParseError("list is never closed with ']'", open_line);
      open_list->append(" ").append(s);
      if (s.back() == ']') open_list = nullptr;
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
    const std::string key(trim(s.substr(0, eq)));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line);
    if (value.empty()) throw ParseError("'" + key + "' has no value", line);
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      unknown.push_back(key + " (line " + std::to_string(line) + ")");
      continue;
    }
    if (entries.count(key)) throw ParseError("'" + key + "' given twice", line);
    auto& entry = entries[key] = Entry{std::string(value), line};
    if (value.front() == '[' && value.back() != ']') {
      open_list = &entry.value;
      open_line = line;
    }
  }
  if (open_list) throw ParseError("list is never closed with ']'", open_line);

  std::vector<std::string> missing;
  for (std::string_view key : {"alternatives", "sample_sizes"})
    if (!entries.count(key)) missing.emplace_back(key);
  if (!unknown.empty() || !missing.empty()) {
    std::string msg = "config schema violation:";
    auto join = [&msg](const char* label, const std::vector<std::string>& keys) {
      if (keys.empty()) return;
      msg += std::string(" ") + label;
      for (std::size_t i = 0; i < keys.size(); ++i) msg += (i ? ", " : " ") + keys[i];
      msg += ";";
    };
    join("unknown key(s)", unknown);
    join("missing key(s)", missing);
    msg.pop_back();
    throw ParseError(msg);
  }

  PowerStudyConfig config;
  config.statistics = all_statistics(laplace_a);
  for (const auto& [key, entry] : entries) {
    try {
      if (key == "alternatives") {
        for (const auto& item : list_items(entry, key))
          config.alternatives.push_back(parse_alternative(item));
      } else if (key == "sample_sizes") {
        for (const auto& item : list_items(entry, key))
          config.sample_sizes.push_back(parse_number<std::size_t>(item, key, entry.line));
      } else if (key == "statistics") {
        const auto v = trim(entry.value);
        std::string joined;
        if (!v.empty() && v.front() == '[') {
          for (const auto& item : list_items(entry, key)) joined += (joined.empty() ? "" : ",") + item;
        } else {
          joined = v;
        }
        config.statistics = parse_statistic_list(joined, laplace_a);
      } else if (key == "replications") {
        config.replications = parse_number<std::size_t>(entry.value, key, entry.line);
      } else if (key == "alpha") {
        config.alpha = parse_number<double>(entry.value, key, entry.line);
      } else if (key == "seed") {
        config.seed = parse_number<std::uint64_t>(entry.value, key, entry.line);
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), entry.line);
    } catch (const DomainError& e) {
      throw ParseError("'" + key + "': " + e.what(), entry.line);
    }
  }
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return config;
}

PowerStudyConfig load_config(const std::filesystem::path& path, double laplace_a) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path.string() + "'");
  try {
    return parse_config(in, laplace_a);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<AlternativeSpec> paper_alternatives() {
  std::vector<AlternativeSpec> out;
  for (const char* text :
       {"poisson(0.5)", "poisson(1)",     "poisson(5)",     "poisson(10)",   "du(4)",
        "bin(5,0.25)",  "bin(5,0.2)",     "bin(10,0.2)",    "bin(10,0.1)",   "nb(9,0.9)",
        "nb(45,0.9)",   "pm(0.5,3,5)",    "zip(0.9,3)",     "pm(0.1,1,5)",   "nb(15,0.75)",
        "nb(3,0.75)",   "du(6)",          "nb(4,0.7)",      "nb(2,2/3)",     "nb(3,2/3)",
        "zip(0.8,3)",   "pm(0.2,1,5)",    "nb(1,0.5)"})
    out.push_back(parse_alternative(text));
  return out;
}

std::vector<std::string_view> preset_names() { return {"paper-n30", "paper-n50", "paper-n100", "desk"}; }

std::optional<PowerStudyConfig> preset(std::string_view name, double laplace_a) {
  PowerStudyConfig config;
  config.alternatives = paper_alternatives();
  config.statistics = all_statistics(laplace_a);
  config.replications = 50000;
  config.alpha = 0.05;
  config.seed = 1;
  if (name == "paper-n30") {
    config.sample_sizes = {30};
  } else if (name == "paper-n50") {
    config.sample_sizes = {50};
  } else if (name == "paper-n100") {
    config.sample_sizes = {100};
  } else if (name == "desk") {
    config.sample_sizes = {30, 50, 100};
    config.replications = 2000;
  } else {
    return std::nullopt;
  }
  return config;
}

}  // namespace wpgof::cli
