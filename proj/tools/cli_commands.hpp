// Copyright 2026 The PrivDude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDUDE_CLI_COMMANDS_HPP
#define PRIVDUDE_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "privdude/problems.hpp"

namespace privdude::cli {

// Exit codes: 0 success, 1 usage/precondition, 2 I/O, 3 internal assertion.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kIo = 2;
inline constexpr int kInternal = 3;

struct GenerateArgs {
  std::string kind;
  GenerateParams params;
  std::uint64_t seed = 0;
  std::string out_path;
};

struct SolveArgs {
  std::string in_path;
  std::string out_path;
  std::string algo = "privdude";
  double epsilon = 1.0;
  double delta = 0.01;
  double beta = 0.1;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::optional<long> T_override;
  bool no_noise = false;
};

struct SweepArgs {
  std::string in_path;
  std::string out_csv;
  std::string algo = "privdude";
  std::string epsilons;  // comma-separated list
  long trials = 1;
  double delta = 0.01;
  double beta = 0.1;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::optional<long> T_override;
  bool no_noise = false;
};

int run_generate(const GenerateArgs& args, std::ostream& out,
                 std::ostream& err);
int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

// Error family -> exit code mapping used by every command.
int exit_code_for(const std::exception& e);

// Comma-separated positive doubles; throws ParameterError on junk.
std::vector<double> parse_epsilon_list(const std::string& text);

}  // namespace privdude::cli

#endif  // PRIVDUDE_CLI_COMMANDS_HPP
