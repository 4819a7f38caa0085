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

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>

#include "wpgof/bootstrap.hpp"
#include "wpgof/error.hpp"

namespace wpgof {
namespace {

constexpr std::string_view kHeader = "alternative,fisher_index,n,statistic,power_pct,M,alpha,seed";

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), result.ptr);
}

std::string quoted(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quote", line_no);
  return fields;
}

template <class T>
T parse_field(const std::string& text, std::size_t line_no, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (text.empty() || result.ec != std::errc{} || result.ptr != end)
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line_no);
  return value;
}

template <class T>
std::size_t index_of(std::vector<T>& list, const T& value) {
  const auto it = std::find(list.begin(), list.end(), value);
  if (it != list.end()) return static_cast<std::size_t>(it - list.begin());
  list.push_back(value);
  return list.size() - 1;
}

}  // namespace

void PowerTable::write_csv(std::ostream& out) const {
  out << kHeader << '\n';
  for (std::size_t a = 0; a < alternatives.size(); ++a)
    for (std::size_t j = 0; j < sample_sizes.size(); ++j)
      for (std::size_t k = 0; k < statistics.size(); ++k)
        out << quoted(alternatives[a]) << ',' << shortest(fisher_index[a]) << ','
            << sample_sizes[j] << ',' << statistics[k] << ',' << shortest(at(a, j, k)) << ','
            << replications << ',' << shortest(alpha) << ',' << seed << '\n';
}

PowerTable PowerTable::read_csv(std::istream& in) {
  PowerTable table;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> cells;
  std::string line;
  std::size_t line_no = 0;
  bool first_cell = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kHeader) throw ParseError("unexpected power table header", line_no);
      continue;
    }
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 8) throw ParseError("expected 8 fields", line_no);

    const auto fi = parse_field<double>(f[1], line_no, "fisher_index");
    const auto n = parse_field<std::size_t>(f[2], line_no, "n");
    const auto pct = parse_field<double>(f[4], line_no, "power_pct");
    const auto reps = parse_field<std::size_t>(f[5], line_no, "M");
    const auto alpha = parse_field<double>(f[6], line_no, "alpha");
    const auto seed = parse_field<std::uint64_t>(f[7], line_no, "seed");
    if (first_cell) {
      table.replications = reps;
      table.alpha = alpha;
      table.seed = seed;
      first_cell = false;
    } else if (reps != table.replications || alpha != table.alpha || seed != table.seed) {
      throw ParseError("M, alpha and seed must agree on every line", line_no);
    }

    const auto a = index_of(table.alternatives, f[0]);
    if (a == table.fisher_index.size()) table.fisher_index.push_back(fi);
    const auto j = index_of(table.sample_sizes, n);
    const auto k = index_of(table.statistics, f[3]);
    if (!cells.emplace(std::tuple{a, j, k}, pct).second)
      throw ParseError("duplicate cell", line_no);
  }
  if (line_no == 0) throw ParseError("empty power table");

  table.power_pct.resize(static_cast<Eigen::Index>(table.alternatives.size() * table.sample_sizes.size()),
                         static_cast<Eigen::Index>(table.statistics.size()));
  if (cells.size() != static_cast<std::size_t>(table.power_pct.size()))
    throw ParseError("power table is missing cells");
  for (const auto& [key, pct] : cells) {
    const auto [a, j, k] = key;
    table.power_pct(table.row(a, j), static_cast<Eigen::Index>(k)) = pct;
  }
  return table;
}

bool operator==(const PowerTable& lhs, const PowerTable& rhs) {
  return lhs.alternatives == rhs.alternatives && lhs.fisher_index == rhs.fisher_index &&
         lhs.sample_sizes == rhs.sample_sizes && lhs.statistics == rhs.statistics &&
         lhs.replications == rhs.replications && lhs.alpha == rhs.alpha &&
         lhs.seed == rhs.seed && lhs.power_pct.rows() == rhs.power_pct.rows() &&
         lhs.power_pct.cols() == rhs.power_pct.cols() && lhs.power_pct == rhs.power_pct;
}

}  // namespace wpgof
