// Copyright 2026 The zenodae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "zenodae/experiment.hpp"

namespace {

constexpr const char* kExitHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  configuration error\n"
    "  3  invariant violation\n"
    "  4  capacity exceeded\n"
    "  5  I/O error\n"
    "Environment:\n"
    "  ZENO_DAE_SEED  overrides the seed given in the config file\n";

int run_command(const std::string& config_path, const zenodae::RunOptions& options) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "status=io exit=5 message=\"cannot read " << config_path << "\"\n";
    return zenodae::kExitIo;
  }
  std::stringstream text;
  text << in.rdbuf();
  zenodae::ExperimentConfig cfg;
  try {
    cfg = zenodae::parse_config(text.str());
    zenodae::apply_environment(cfg);
  } catch (const zenodae::Error& e) {
    std::cerr << "status=" << zenodae::to_string(e.kind()) << " exit=2 file=\"" << config_path << "\" message=\""
              << e.what() << "\"\n";
    return zenodae::kExitConfig;
  }
  const zenodae::RunResult result = zenodae::run_suite(cfg, options);
  (result.exit_code == 0 ? std::cout : std::cerr) << result.summary << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical testbed for constrained linear DAE dilation and projected evolution"};
  app.footer(kExitHelp);
  app.require_subcommand(1);

  std::string config_path;
  zenodae::RunOptions options;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file and write CSV");
  run->add_option("config", config_path, "key = value experiment file")->required();
  run->add_option("--out", options.out_dir, "Output directory");
  run->add_option("--threads", options.threads, "Worker threads for sweep points")->check(CLI::Range(1u, 256u));
  run->add_flag("--dump-operators", options.dump_operators, "Also write operator triplet files");

  CLI::App* check = app.add_subcommand("check", "Run the invariant checks of every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zenodae::kExitConfig;
  }

  if (*run) return run_command(config_path, options);
  if (*check) return zenodae::run_checks(std::cout);
  return zenodae::kExitConfig;
}
