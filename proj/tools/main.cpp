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

#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
  using namespace privdude::cli;

  CLI::App app{"privdude: jointly private dual decomposition for linearly "
               "separable convex programs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a seeded problem instance file");
  generate->add_option("--kind", gen.kind,
                       "knapsack|ddemand|flow|schedule|shared")
      ->required();
  generate->add_option("--n", gen.params.n, "number of agents");
  generate->add_option("--k", gen.params.k, "constraints/goods/resources");
  generate->add_option("--d", gen.params.d,
                       "bundle cap / resources per project / total cap");
  generate->add_option("--m", gen.params.m, "edges (flow) or projects");
  generate->add_option("--intervals", gen.params.intervals,
                       "schedule intervals");
  generate->add_option("--slots", gen.params.slots, "schedule slots");
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--out", gen.out_path, "output instance path")
      ->required();

  SolveArgs solve;
  long solve_T = 0;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve an instance and write a report");
  solve_cmd->add_option("--in", solve.in_path, "instance path")->required();
  solve_cmd
      ->add_option("--algo", solve.algo,
                   "privdude|truedude|tightdude|rounddude|baseline")
      ->required();
  solve_cmd->add_option("--epsilon", solve.epsilon, "privacy epsilon");
  solve_cmd->add_option("--delta", solve.delta, "privacy delta");
  solve_cmd->add_option("--beta", solve.beta, "confidence beta");
  solve_cmd->add_option("--alpha", solve.alpha,
                        "satisfaction parameter (mechanisms)");
  solve_cmd->add_option("--seed", solve.seed, "run seed");
  CLI::Option* t_opt =
      solve_cmd->add_option("--T-override", solve_T, "iteration override");
  solve_cmd->add_flag("--no-noise", solve.no_noise, "disable all noise");
  solve_cmd->add_option("--out", solve.out_path, "report output path")
      ->required();

  SweepArgs sweep;
  long sweep_T = 0;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a privacy-accuracy sweep and write plot-ready CSV");
  sweep_cmd->add_option("--in", sweep.in_path, "instance path")->required();
  sweep_cmd
      ->add_option("--epsilons", sweep.epsilons,
                   "comma-separated epsilon values")
      ->required();
  sweep_cmd->add_option("--trials", sweep.trials, "trials per epsilon");
  sweep_cmd->add_option("--algo", sweep.algo,
                        "privdude|truedude|tightdude|rounddude");
  sweep_cmd->add_option("--delta", sweep.delta, "privacy delta");
  sweep_cmd->add_option("--beta", sweep.beta, "confidence beta");
  sweep_cmd->add_option("--alpha", sweep.alpha, "satisfaction parameter");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  CLI::Option* sweep_t_opt =
      sweep_cmd->add_option("--T-override", sweep_T, "iteration override");
  sweep_cmd->add_flag("--no-noise", sweep.no_noise, "disable all noise");
  sweep_cmd->add_option("--out", sweep.out_csv, "CSV output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (generate->parsed()) {
    return run_generate(gen, std::cout, std::cerr);
  }
  if (solve_cmd->parsed()) {
    if (t_opt->count() > 0) solve.T_override = solve_T;
    return run_solve(solve, std::cout, std::cerr);
  }
  if (sweep_cmd->parsed()) {
    if (sweep_t_opt->count() > 0) sweep.T_override = sweep_T;
    return run_sweep(sweep, std::cout, std::cerr);
  }
  return kUsage;
}
