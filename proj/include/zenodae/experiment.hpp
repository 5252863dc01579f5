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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "zenodae/matcore.hpp"

namespace zenodae {

inline constexpr const char* kVersion = "0.1.0";

enum class Suite { kDilate, kZeno, kStokes, kGauss, kRlc, kCost };

const char* to_string(Suite suite);

/// Parsed `key = value` experiment description. Every parameter of the suite is present after
/// parsing (defaults filled in); scalars are stored as one-element lists.
struct ExperimentConfig {
  Suite suite = Suite::kDilate;
  std::map<std::string, std::vector<double>> params;
  std::uint64_t seed = 42;
  std::string output_path;  // file name, relative to the output directory unless absolute

  double scalar(const std::string& key) const;
  Index count(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
};

/// Errors are `ErrorKind::kParse` with the offending line number in the message.
ExperimentConfig parse_config(const std::string& text);

/// Applies ZENO_DAE_SEED when set.
void apply_environment(ExperimentConfig& cfg);

/// Canonical parameter string hashed into the CSV metadata line.
std::string canonical_params(const ExperimentConfig& cfg);
std::string params_hash(const ExperimentConfig& cfg);

struct RunOptions {
  std::string out_dir = ".";
  unsigned threads = 1;
  bool dump_operators = false;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitInvariant = 3, kExitCapacity = 4, kExitIo = 5 };

int exit_code_for(ErrorKind kind);

struct RunResult {
  int exit_code = kExitOk;
  std::string csv_path;
  /// One line, `status=<...> suite=<...> ...`, for logs and CI.
  std::string summary;
};

/// Runs the sweep, writes the CSV and never throws.
RunResult run_suite(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Quick invariant checks across all modules; one `ok`/`FAIL` line each. Returns an exit code.
int run_checks(std::ostream& os);

}  // namespace zenodae
