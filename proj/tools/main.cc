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

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "hrank/experiment.h"

namespace {

using hrank::cli::DecomposeOptions;
using hrank::cli::NextPairOptions;
using hrank::cli::SimulateOptions;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdsourced ranking with HodgeRank and active sampling"};
  app.set_version_flag("--version", hrank::cli::version_string());
  app.require_subcommand(1);

  SimulateOptions sim;
  bool sim_timelines = false;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation study");
  simulate->add_option("--config", sim.config, "Experiment config JSON")
      ->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_flag("--timelines", sim_timelines,
                     "Also write one topology timeline per replication");

  std::string input;
  std::string mode = "binary";
  double gamma = 0.0;
  std::string timeline_out;
  auto* dec = app.add_subcommand(
      "decompose", "Decompose a comparison log and print a JSON report");
  dec->add_option("--input", input, "Comparison log CSV ('-' for stdin)")
      ->required();
  dec->add_option("--mode", mode, "binary or general")
      ->check(CLI::IsMember({"binary", "general"}));
  dec->add_option("--gamma", gamma, "Ridge parameter for the scores (0: min-norm)")
      ->check(CLI::NonNegativeNumber);
  dec->add_option("--timeline", timeline_out,
                  "Write the topology timeline CSV here");

  std::string state_path;
  std::string policy = "supervised";
  std::string link = "uniform";
  std::vector<std::string> init;
  std::vector<std::string> observe;
  auto* next = app.add_subcommand(
      "next-pair", "Select the next pair to label in a resumable session");
  next->add_option("--state", state_path, "Session state file")->required();
  next->add_option("--policy", policy, "random, unsupervised or supervised");
  next->add_option("--link", link, "Link used by the supervised policy");
  next->add_option("--init", init, "Start a session: n=<n> [gamma=<g>] ...")
      ->expected(1, 4);
  next->add_option("--observe", observe, "Record a label: i j y")
      ->expected(3);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      sim.threads = hrank::default_thread_count();
      sim.timelines = sim_timelines;
      hrank::cli::cmd_simulate(sim);
    } else if (*dec) {
      DecomposeOptions options{hrank::cli::parse_mode(mode), gamma};
      nlohmann::json report;
      if (input == "-") {
        report = hrank::cli::cmd_decompose(std::cin, options);
      } else {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open " + input);
        report = hrank::cli::cmd_decompose(in, options);
      }
      if (!timeline_out.empty()) {
        if (input == "-") throw std::runtime_error("--timeline needs a file input");
        std::ifstream in(input);
        const auto ingested = hrank::cli::ingest(in, options.mode);
        std::ofstream out(timeline_out);
        if (!out) throw std::runtime_error("cannot write " + timeline_out);
        hrank::write_timeline_csv(
            out, hrank::track(hrank::filtration(ingested.graph)));
      }
      std::cout << report.dump(2) << '\n';
    } else if (*next) {
      NextPairOptions options;
      options.state = state_path;
      options.policy = hrank::parse_policy(policy);
      options.link = hrank::parse_link(link);
      options.init = init;
      if (!observe.empty()) {
        hrank::cli::Observation obs;
        obs.i = std::stoi(observe[0]);
        obs.j = std::stoi(observe[1]);
        obs.y = std::stod(observe[2]);
        options.observe = obs;
      }
      const hrank::ItemPair pair = hrank::cli::cmd_next_pair(options, std::cerr);
      std::cout << pair.i << ' ' << pair.j << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "hrank: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
