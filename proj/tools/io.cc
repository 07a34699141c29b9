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

#include "io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "hrank/format.h"

namespace hrank::cli {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool parse_double(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

template <typename Int>
bool parse_int(std::string_view text, Int& value) {
  if (text.empty()) return false;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

// getline that drops a trailing CR so CRLF input is accepted.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

template <typename T>
T get_field(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key + ": wrong type (" + std::string(j.type_name()) +
                      ")");
  }
}

std::int64_t get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError(key + ": expected an integer");
  }
  return j.get<std::int64_t>();
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + ": expected a number");
  return j.get<double>();
}

template <typename T, typename Parse>
T get_enum(const json& j, const std::string& key, Parse parse) {
  const std::string name = get_field<std::string>(j, key);
  try {
    return parse(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

IngestError::IngestError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ": " +
                                         what),
      line_(line) {}

int LabelMap::intern(const std::string& label) {
  auto [it, inserted] = index_.emplace(label, size());
  if (inserted) labels_.push_back(label);
  return it->second;
}

ValueMode parse_mode(std::string_view name) {
  if (name == "binary") return ValueMode::kBinary;
  if (name == "general") return ValueMode::kGeneral;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected binary or general)");
}

std::vector<ComparisonLogRow> read_comparison_log(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) throw IngestError(0, "empty file");
  if (line != kComparisonLogHeader) {
    throw IngestError(1, "expected header '" +
                             std::string(kComparisonLogHeader) + "'");
  }
  std::vector<ComparisonLogRow> rows;
  for (std::size_t number = 2; read_line(in, line); ++number) {
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 4) {
      throw IngestError(number, "expected 4 fields, found " +
                                    std::to_string(fields.size()));
    }
    ComparisonLogRow row{std::string(fields[0]), std::string(fields[1]),
                         std::string(fields[2]), 0.0};
    if (row.voter_id.empty() || row.item_i.empty() || row.item_j.empty()) {
      throw IngestError(number, "empty field");
    }
    if (!parse_double(fields[3], row.choice)) {
      throw IngestError(number,
                        "choice '" + std::string(fields[3]) + "' is not a number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_comparison_log(std::ostream& out,
                          std::span<const ComparisonLogRow> rows) {
  out << kComparisonLogHeader << '\n';
  for (const ComparisonLogRow& row : rows) {
    out << row.voter_id << ',' << row.item_i << ',' << row.item_j << ','
        << format_double(row.choice) << '\n';
  }
}

IngestedLog ingest_rows(std::span<const ComparisonLogRow> rows,
                        ValueMode mode) {
  if (rows.empty()) throw IngestError(0, "no comparison rows");
  LabelMap items;
  LabelMap voters;
  struct Indexed {
    int voter, i, j;
  };
  std::vector<Indexed> indexed;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const ComparisonLogRow& row = rows[k];
    const std::size_t line = k + 2;
    if (mode == ValueMode::kBinary && row.choice != 1.0 && row.choice != -1.0) {
      throw IngestError(line, "binary mode requires choice 1 or -1, got " +
                                  format_double(row.choice));
    }
    if (row.item_i == row.item_j) {
      throw IngestError(line, "item '" + row.item_i + "' compared with itself");
    }
    indexed.push_back({voters.intern(row.voter_id), items.intern(row.item_i),
                       items.intern(row.item_j)});
  }
  ComparisonGraph graph(items.size(), mode);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    graph.add_comparison(indexed[k].voter, indexed[k].i, indexed[k].j,
                         rows[k].choice);
  }
  EdgeFlow flow = graph.observed_flow();
  return {std::move(graph), std::move(flow), std::move(items),
          std::move(voters)};
}

IngestedLog ingest(std::istream& in, ValueMode mode) {
  const std::vector<ComparisonLogRow> rows = read_comparison_log(in);
  return ingest_rows(rows, mode);
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "n") {
      cfg.n = static_cast<int>(get_int(value, key));
    } else if (key == "budget") {
      cfg.budget = get_int(value, key);
    } else if (key == "schemes") {
      if (!value.is_array()) throw ConfigError("schemes: expected an array");
      cfg.schemes.clear();
      for (const json& s : value) {
        cfg.schemes.push_back(get_enum<Policy>(s, key, parse_policy));
      }
    } else if (key == "link") {
      cfg.link = get_enum<LinkKind>(value, key, parse_link);
    } else if (key == "gamma") {
      cfg.gamma = get_real(value, key);
    } else if (key == "sigma_eps") {
      cfg.sigma_eps = get_real(value, key);
    } else if (key == "replications") {
      cfg.replications = static_cast<int>(get_int(value, key));
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ConfigError("seed: expected a non-negative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "eval_grid") {
      if (!value.is_array()) throw ConfigError("eval_grid: expected an array");
      cfg.eval_grid.clear();
      for (const json& s : value) cfg.eval_grid.push_back(get_int(s, key));
    } else if (key == "voters") {
      cfg.voters = static_cast<int>(get_int(value, key));
    } else if (key == "estimator") {
      cfg.estimator = get_enum<Estimator>(value, key, parse_estimator);
    } else if (key == "noise_free") {
      cfg.noise_free = get_field<bool>(value, key);
    } else if (key == "offline_supervised") {
      cfg.offline_supervised = get_field<bool>(value, key);
    } else if (key == "record_wallclock") {
      cfg.record_wallclock = get_field<bool>(value, key);
    } else {
      throw ConfigError(key + ": unknown field");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json schemes = json::array();
  for (Policy p : cfg.schemes) schemes.push_back(policy_name(p));
  return {{"n", cfg.n},
          {"budget", cfg.budget},
          {"schemes", schemes},
          {"link", link_name(cfg.link)},
          {"gamma", cfg.gamma},
          {"sigma_eps", cfg.sigma_eps},
          {"replications", cfg.replications},
          {"seed", cfg.seed},
          {"eval_grid", cfg.checkpoints()},
          {"voters", cfg.voters},
          {"estimator", estimator_name(cfg.estimator)},
          {"noise_free", cfg.noise_free},
          {"offline_supervised", cfg.offline_supervised},
          {"record_wallclock", cfg.record_wallclock}};
}

void write_result_csv(std::ostream& out, const ResultTable& table) {
  out << kResultHeader << '\n';
  for (const ResultRow& row : table.rows) {
    out << row.replication << ',' << policy_name(row.scheme) << ','
        << row.step << ',' << metric_name(row.metric) << ','
        << format_double(row.value) << '\n';
  }
}

ResultTable read_result_csv(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) throw IngestError(0, "empty file");
  if (line != kResultHeader) {
    throw IngestError(1, "expected header '" + std::string(kResultHeader) + "'");
  }
  ResultTable table;
  for (std::size_t number = 2; read_line(in, line); ++number) {
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 5) throw IngestError(number, "expected 5 fields");
    ResultRow row;
    try {
      row.scheme = parse_policy(f[1]);
      row.metric = parse_metric(f[3]);
    } catch (const std::invalid_argument& e) {
      throw IngestError(number, e.what());
    }
    if (!parse_int(f[0], row.replication) || !parse_int(f[2], row.step) ||
        !parse_double(f[4], row.value)) {
      throw IngestError(number, "malformed number");
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot replace " + path.string() + ": " +
                             ec.message());
  }
}

}  // namespace hrank::cli
