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

#ifndef HRANK_TOOLS_COMMANDS_H_
#define HRANK_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrank/comparison_graph.h"
#include "hrank/glm.h"
#include "hrank/sampling.h"
#include "io.h"
#include "json.hpp"

namespace hrank::cli {

// Version reported in summaries, e.g. "0.1.0+abc1234".
const char* version_string();

struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir;
  int threads = 1;
  // Also write timelines/<scheme>_<rep>.csv.
  bool timelines = false;
};

// Writes <out>/results.csv and <out>/summary.json. Nothing is written unless
// every replication completed.
void cmd_simulate(const SimulateOptions& options);

// Summary document: config echo, version and per-scheme mean final tau.
nlohmann::json simulation_summary(const ExperimentConfig& cfg,
                                  const ResultTable& table);

struct DecomposeOptions {
  ValueMode mode = ValueMode::kBinary;
  // Regularization of the reported scores; 0 selects the minimum-norm
  // least-squares scores.
  double gamma = 0.0;
};

nlohmann::json cmd_decompose(std::istream& csv, const DecomposeOptions& options);

// Persistent state of an interactive labelling session. Both the posterior
// and the Laplacian are kept so any policy can be used at any step.
struct SessionState {
  static constexpr int kVersion = 1;

  PosteriorState posterior;
  Eigen::MatrixXd laplacian;
  std::uint64_t seed = 0;
  std::optional<ItemPair> last_selected;

  static SessionState init(int n, double gamma, double sigma_eps,
                           std::uint64_t seed);
  int num_items() const { return posterior.num_items(); }
};

// Adds a "checksum" field over the rest of the document.
nlohmann::json state_to_json(const SessionState& state);
// Throws std::runtime_error on a version or checksum mismatch.
SessionState state_from_json(const nlohmann::json& j);
SessionState load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const SessionState& state);

struct Observation {
  ItemIndex i = 0;
  ItemIndex j = 0;
  double y = 0;
};

struct NextPairOptions {
  std::filesystem::path state;
  Policy policy = Policy::kSupervised;
  LinkKind link = LinkKind::kUniform;
  // key=value tokens: n (required), gamma, sigma_eps, seed.
  std::vector<std::string> init;
  std::optional<Observation> observe;
};

// Loads (or initializes) the state, applies the observation, selects the
// next pair, stores it and saves the state. Warnings go to `warn`.
ItemPair cmd_next_pair(const NextPairOptions& options, std::ostream& warn);

// Applies one label to both the posterior and the Laplacian.
void apply_observation(SessionState& state, const Observation& obs);
ItemPair select_next(const SessionState& state, Policy policy, LinkKind link);

}  // namespace hrank::cli

#endif  // HRANK_TOOLS_COMMANDS_H_
