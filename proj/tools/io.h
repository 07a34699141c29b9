// Copyright 2026 The hrank Authors.
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

#ifndef HRANK_TOOLS_IO_H_
#define HRANK_TOOLS_IO_H_

// File formats of the hrank tool: comparison logs, experiment configs and
// result tables. All writers use '.' decimals, LF line endings and 17
// significant digits.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hrank/comparison_graph.h"
#include "hrank/experiment.h"
#include "json.hpp"

namespace hrank::cli {

inline constexpr std::string_view kComparisonLogHeader =
    "voter_id,item_i,item_j,choice";
inline constexpr std::string_view kResultHeader =
    "replication,scheme,step,metric,value";

// Malformed input; line() is 1-based (the header is line 1), 0 when the
// problem is not tied to a line.
class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ComparisonLogRow {
  std::string voter_id;
  std::string item_i;
  std::string item_j;
  double choice = 0;

  friend bool operator==(const ComparisonLogRow&,
                         const ComparisonLogRow&) = default;
};

// String labels to dense indices in order of first appearance.
class LabelMap {
 public:
  int intern(const std::string& label);
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

ValueMode parse_mode(std::string_view name);

// Reads the header and all rows. Choices must parse as reals; the mode check
// happens in ingest().
std::vector<ComparisonLogRow> read_comparison_log(std::istream& in);
void write_comparison_log(std::ostream& out,
                          std::span<const ComparisonLogRow> rows);

struct IngestedLog {
  ComparisonGraph graph;
  // Canonical-orientation record values (graph.observed_flow()).
  EdgeFlow flow;
  LabelMap items;
  LabelMap voters;
};

// Row k becomes the record with seq k. Throws IngestError for malformed rows,
// binary-mode choices other than +-1, self comparisons and empty input.
IngestedLog ingest(std::istream& in, ValueMode mode);
IngestedLog ingest_rows(std::span<const ComparisonLogRow> rows, ValueMode mode);

// Unknown fields and wrongly typed values throw ConfigError; the result is
// validated.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig read_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

void write_result_csv(std::ostream& out, const ResultTable& table);
ResultTable read_result_csv(std::istream& in);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never see a partial file. Throws std::runtime_error on failure.
void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents);

}  // namespace hrank::cli

#endif  // HRANK_TOOLS_IO_H_
