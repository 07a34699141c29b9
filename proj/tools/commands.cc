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

#include "commands.h"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hrank/experiment.h"
#include "hrank/hodge.h"
#include "hrank/topology.h"

#ifndef HRANK_VERSION
#define HRANK_VERSION "unknown"
#endif

namespace hrank::cli {
namespace {

using nlohmann::json;

constexpr std::string_view kStateFormat = "hrank-session";

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string checksum_of(const json& payload) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(payload.dump()));
  return buf;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j, int n, const char* field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n) * n) {
    throw std::runtime_error(std::string("state file: bad ") + field);
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = j.at(r * n + c).get<double>();
  }
  return m;
}

std::map<std::string, std::string> parse_init_tokens(
    const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> out;
  for (const std::string& token : tokens) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--init: expected key=value, got '" + token +
                                  "'");
    }
    const std::string key = token.substr(0, eq);
    if (key != "n" && key != "gamma" && key != "sigma_eps" && key != "seed") {
      throw std::invalid_argument("--init: unknown key '" + key + "'");
    }
    out[key] = token.substr(eq + 1);
  }
  if (!out.contains("n")) throw std::invalid_argument("--init: n is required");
  return out;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  T value{};
  if (!(in >> value) || !in.eof()) {
    throw std::invalid_argument("--init: bad value for " + key + ": '" + text +
                                "'");
  }
  return value;
}

}  // namespace

const char* version_string() { return HRANK_VERSION; }

json simulation_summary(const ExperimentConfig& cfg, const ResultTable& table) {
  json final_tau = json::object();
  for (Policy scheme : cfg.schemes) {
    double sum = 0;
    int count = 0;
    for (const ResultRow& row : table.rows) {
      if (row.scheme == scheme && row.metric == Metric::kKendallTau &&
          row.step == cfg.budget) {
        sum += row.value;
        ++count;
      }
    }
    final_tau[std::string(policy_name(scheme))] =
        count > 0 ? json(sum / count) : json(nullptr);
  }
  return {{"version", version_string()},
          {"config", config_to_json(cfg)},
          {"final_mean_kendall_tau", final_tau},
          {"rows", table.rows.size()}};
}

void cmd_simulate(const SimulateOptions& options) {
  const ExperimentConfig cfg = read_config(options.config);
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec || !std::filesystem::is_directory(options.out_dir)) {
    throw std::runtime_error("cannot create output directory " +
                             options.out_dir.string());
  }

  const std::vector<ReplicationOutput> outputs =
      run_experiment(cfg, options.threads);
  const ResultTable table = collect_rows(outputs);

  std::ostringstream csv;
  write_result_csv(csv, table);
  const std::string summary = simulation_summary(cfg, table).dump(2) + "\n";

  if (options.timelines) {
    const auto dir = options.out_dir / "timelines";
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string());
    for (const ReplicationOutput& o : outputs) {
      std::ostringstream out;
      write_timeline_csv(out, o.timeline);
      write_file_atomically(dir / (std::string(policy_name(o.scheme)) + "_" +
                                   std::to_string(o.replication) + ".csv"),
                            out.str());
    }
  }
  write_file_atomically(options.out_dir / "results.csv", csv.str());
  write_file_atomically(options.out_dir / "summary.json", summary);
}

json cmd_decompose(std::istream& csv, const DecomposeOptions& options) {
  const IngestedLog log = ingest(csv, options.mode);
  const HodgeComponents parts = decompose(log.graph, log.flow);
  const ComponentEnergies e = energies(parts);
  const GlobalScore score =
      global_score(log.graph, log.flow, {options.gamma, 1.0});
  const BettiNumbers betti = betti_oracle(log.graph);

  json scores = json::array();
  for (int k = 0; k < log.items.size(); ++k) {
    scores.push_back({{"item", log.items.labels()[k]}, {"score", score.x[k]}});
  }
  return {{"version", version_string()},
          {"mode", options.mode == ValueMode::kBinary ? "binary" : "general"},
          {"gamma", options.gamma},
          {"num_items", log.graph.num_items()},
          {"num_records", log.graph.num_records()},
          {"num_edges", log.graph.edges().size()},
          {"num_triangles", log.graph.triangles().size()},
          {"energies",
           {{"bias", e.bias},
            {"tie_kernel", e.tie_kernel},
            {"gradient", e.gradient},
            {"curl", e.curl},
            {"harmonic", e.harmonic},
            {"total", log.flow.squaredNorm()}}},
          {"scores", scores},
          {"beta0", betti.beta0},
          {"beta1", betti.beta1},
          {"loop_free", betti.beta1 == 0}};
}

SessionState SessionState::init(int n, double gamma, double sigma_eps,
                                std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("--init: n must be >= 2");
  SessionState s;
  s.posterior = PosteriorState::prior(n, {gamma, sigma_eps});
  s.laplacian = Eigen::MatrixXd::Zero(n, n);
  s.seed = seed;
  return s;
}

json state_to_json(const SessionState& state) {
  const int n = state.num_items();
  json j = {{"format", kStateFormat},
            {"version", SessionState::kVersion},
            {"n", n},
            {"gamma", state.posterior.gamma},
            {"sigma_eps", state.posterior.sigma_eps},
            {"t", state.posterior.t},
            {"seed", state.seed},
            {"mean", std::vector<double>(state.posterior.mean.begin(),
                                         state.posterior.mean.end())},
            {"inverse", matrix_to_json(state.posterior.inverse)},
            {"laplacian", matrix_to_json(state.laplacian)}};
  j["last_selected"] =
      state.last_selected
          ? json::array({state.last_selected->i, state.last_selected->j})
          : json(nullptr);
  j["checksum"] = checksum_of(j);
  return j;
}

SessionState state_from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("format", "") != kStateFormat) {
      throw std::runtime_error("not an hrank session state");
    }
    if (j.at("version").get<int>() != SessionState::kVersion) {
      throw std::runtime_error("unsupported state version " +
                               j.at("version").dump());
    }
    json payload = j;
    const std::string stored = payload.at("checksum").get<std::string>();
    payload.erase("checksum");
    if (checksum_of(payload) != stored) {
      throw std::runtime_error("checksum mismatch (corrupt state file)");
    }
    const int n = j.at("n").get<int>();
    if (n < 2) throw std::runtime_error("bad n");
    SessionState s;
    s.posterior.gamma = j.at("gamma").get<double>();
    s.posterior.sigma_eps = j.at("sigma_eps").get<double>();
    s.posterior.t = j.at("t").get<std::int64_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto mean = j.at("mean").get<std::vector<double>>();
    if (mean.size() != static_cast<std::size_t>(n)) {
      throw std::runtime_error("bad mean");
    }
    s.posterior.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), n);
    s.posterior.inverse = matrix_from_json(j.at("inverse"), n, "inverse");
    s.laplacian = matrix_from_json(j.at("laplacian"), n, "laplacian");
    const json& last = j.at("last_selected");
    if (!last.is_null()) {
      s.last_selected = ItemPair{last.at(0).get<int>(), last.at(1).get<int>()};
    }
    return s;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("state file: ") + e.what());
  }
}

SessionState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("state file: " + std::string(e.what()));
  }
  try {
    return state_from_json(j);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void save_state(const std::filesystem::path& path, const SessionState& state) {
  write_file_atomically(path, state_to_json(state).dump(2) + "\n");
}

void apply_observation(SessionState& state, const Observation& obs) {
  ItemPair pair{obs.i, obs.j};
  double y = obs.y;
  if (pair.i > pair.j) {
    std::swap(pair.i, pair.j);
    y = -y;
  }
  posterior_update(state.posterior, pair, y);
  add_pair_laplacian(state.laplacian, pair.i, pair.j);
}

ItemPair select_next(const SessionState& state, Policy policy, LinkKind link) {
  switch (policy) {
    case Policy::kRandom: {
      Rng rng(derive_seed(state.seed,
                          {static_cast<std::uint64_t>(state.posterior.t)}));
      return random_select(state.num_items(), rng);
    }
    case Policy::kUnsupervised:
      return unsupervised_select(FiedlerState::from_laplacian(state.laplacian));
    case Policy::kSupervised:
      return supervised_select(state.posterior, link);
  }
  throw std::invalid_argument("unknown policy");
}

ItemPair cmd_next_pair(const NextPairOptions& options, std::ostream& warn) {
  SessionState state;
  if (!options.init.empty()) {
    if (std::filesystem::exists(options.state)) {
      throw std::runtime_error("--init: state file " + options.state.string() +
                               " already exists");
    }
    const auto kv = parse_init_tokens(options.init);
    auto get = [&](const std::string& key, const std::string& fallback) {
      auto it = kv.find(key);
      return it == kv.end() ? fallback : it->second;
    };
    state = SessionState::init(parse_value<int>("n", kv.at("n")),
                               parse_value<double>("gamma", get("gamma", "0.01")),
                               parse_value<double>("sigma_eps",
                                                   get("sigma_eps", "1")),
                               parse_value<std::uint64_t>("seed", get("seed", "0")));
  } else {
    state = load_state(options.state);
  }

  if (options.observe) {
    const Observation& obs = *options.observe;
    const ItemPair canonical{std::min(obs.i, obs.j), std::max(obs.i, obs.j)};
    if (!state.last_selected || *state.last_selected != canonical) {
      warn << "warning: observed pair (" << obs.i << ", " << obs.j
           << ") was not the last selected pair\n";
    }
    apply_observation(state, obs);
  }

  const ItemPair next = select_next(state, options.policy, options.link);
  state.last_selected = next;
  save_state(options.state, state);
  return next;
}

}  // namespace hrank::cli
