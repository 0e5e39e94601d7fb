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

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cli_commands.hpp"
#include "privdude/errors.hpp"
#include "privdude/serialize.hpp"
#include "privdude/solver.hpp"

using namespace privdude;
using namespace privdude::cli;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "privdude_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string path_of(const std::string& name) {
  return (scratch_dir() / name).string();
}

GenerateArgs knapsack_args(const std::string& out) {
  GenerateArgs args;
  args.kind = "knapsack";
  args.params.n = 3;
  args.params.k = 1;
  args.seed = 7;
  args.out_path = out;
  return args;
}

}  // namespace

TEST_CASE("instances round-trip bit-exactly through files") {
  const GenerateParams params{
      .n = 3, .k = 2, .d = 2, .m = 4, .intervals = 2, .slots = 2};
  for (ProblemKind kind :
       {ProblemKind::kKnapsack, ProblemKind::kDDemand, ProblemKind::kFlow,
        ProblemKind::kSchedule, ProblemKind::kSharedResource}) {
    const Instance instance = generate(kind, params, 99);
    const std::string path = path_of("roundtrip.json");
    save_instance(instance, 99, path);
    const StoredInstance loaded = load_instance(path);
    CHECK(loaded.seed == 99);
    CHECK(instance_to_json(loaded.instance, loaded.seed) ==
          instance_to_json(instance, 99));
  }
}

TEST_CASE("generate command writes deterministic files") {
  std::ostringstream out1, out2, err;
  const std::string p1 = path_of("gen1.json");
  const std::string p2 = path_of("gen2.json");
  CHECK(run_generate(knapsack_args(p1), out1, err) == kOk);
  CHECK(run_generate(knapsack_args(p2), out2, err) == kOk);
  CHECK(read_text_file(p1) == read_text_file(p2));

  GenerateArgs bad = knapsack_args(path_of("bad.json"));
  bad.kind = "mystery";
  std::ostringstream out3, err3;
  CHECK(run_generate(bad, out3, err3) == kUsage);
  CHECK(err3.str().find("unsupported problem kind") != std::string::npos);
}

TEST_CASE("generate reports IO failures with exit code 2") {
  GenerateArgs args = knapsack_args("/nonexistent_dir_zz/inst.json");
  std::ostringstream out, err;
  CHECK(run_generate(args, out, err) == kIo);
}

TEST_CASE("solve command end to end with a clean audit") {
  const std::string inst = path_of("solve_in.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(knapsack_args(inst), gout, gerr) == kOk);

  SolveArgs args;
  args.in_path = inst;
  args.out_path = path_of("solve_out.json");
  args.algo = "privdude";
  args.no_noise = true;
  args.T_override = 2000;
  std::ostringstream out, err;
  REQUIRE(run_solve(args, out, err) == kOk);

  const auto j = nlohmann::json::parse(read_text_file(args.out_path));
  CHECK(j.at("audit").at("verdict").at("all_ok").get<bool>());
  CHECK(j.at("ledger").at("within_budget").get<bool>());

  // Identical invocation, identical bytes.
  SolveArgs again = args;
  again.out_path = path_of("solve_out2.json");
  std::ostringstream out2, err2;
  REQUIRE(run_solve(again, out2, err2) == kOk);
  const std::string a = read_text_file(args.out_path);
  const std::string b = read_text_file(again.out_path);
  CHECK(a == b);
}

TEST_CASE("solve rejects mechanisms on programs without null actions") {
  GenerateArgs gen;
  gen.kind = "flow";
  gen.params.n = 2;
  gen.params.m = 4;
  gen.seed = 3;
  gen.out_path = path_of("flow.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(gen, gout, gerr) == kOk);

  SolveArgs args;
  args.in_path = gen.out_path;
  args.out_path = path_of("flow_report.json");
  args.algo = "truedude";
  std::ostringstream out, err;
  CHECK(run_solve(args, out, err) == kUsage);
  CHECK(err.str().find("null action") != std::string::npos);
}

TEST_CASE("solve maps error families to exit codes") {
  SolveArgs missing;
  missing.in_path = path_of("does_not_exist.json");
  missing.out_path = path_of("unused.json");
  std::ostringstream out, err;
  CHECK(run_solve(missing, out, err) == kIo);

  const std::string inst = path_of("codes_in.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(knapsack_args(inst), gout, gerr) == kOk);

  SolveArgs bad_algo;
  bad_algo.in_path = inst;
  bad_algo.out_path = path_of("codes_out.json");
  bad_algo.algo = "simplex";
  std::ostringstream out2, err2;
  CHECK(run_solve(bad_algo, out2, err2) == kUsage);

  SolveArgs bad_eps;
  bad_eps.in_path = inst;
  bad_eps.out_path = path_of("codes_out2.json");
  bad_eps.epsilon = -1.0;
  std::ostringstream out3, err3;
  CHECK(run_solve(bad_eps, out3, err3) == kUsage);

  // tightdude on a tiny capacity: the reserve cannot fit.
  SolveArgs tight;
  tight.in_path = inst;
  tight.out_path = path_of("codes_out3.json");
  tight.algo = "tightdude";
  tight.alpha = 1.0;
  std::ostringstream out4, err4;
  CHECK(run_solve(tight, out4, err4) == kUsage);
  CHECK(err4.str().find("kappa") != std::string::npos);

  CHECK(exit_code_for(InternalError("x")) == kInternal);
  CHECK(exit_code_for(SolveAborted(1, 0, {}, "x")) == kInternal);
  CHECK(exit_code_for(IoError("x")) == kIo);
  CHECK(exit_code_for(PreconditionError("x")) == kUsage);
  CHECK(exit_code_for(ParameterError("x")) == kUsage);
}

TEST_CASE("a lying instance surfaces as an internal assertion, exit 3") {
  // Weight far outside the class's [0, 1] range: the reserve is sized for
  // C_inf = 1, so the rounded output lands over capacity and the final
  // feasibility assertion must fire rather than return silently.
  KnapsackInstance liar;
  liar.values = {1.0};
  liar.weights = {{50.0}};
  liar.capacities = {4.0};
  const std::string path = path_of("liar.json");
  save_instance(liar, 0, path);

  SolveArgs args;
  args.in_path = path;
  args.out_path = path_of("liar_out.json");
  args.algo = "tightdude";
  args.epsilon = 1.0e9;  // shrink the reserve to sqrt(3 b) so kappa < 1
  args.alpha = 1.0;
  args.no_noise = true;
  std::ostringstream out, err;
  CHECK(run_solve(args, out, err) == kInternal);
  CHECK(err.str().find("infeasible") != std::string::npos);
}

TEST_CASE("every problem kind solves end to end") {
  struct Kind {
    const char* name;
    GenerateParams params;
  };
  const std::vector<Kind> kinds = {
      {"knapsack", {.n = 3, .k = 2}},
      {"ddemand", {.n = 3, .k = 3, .d = 2}},
      {"flow", {.n = 2, .k = 1, .m = 4}},
      {"schedule", {.n = 2, .k = 1, .d = 2, .intervals = 2, .slots = 2}},
      {"shared", {.n = 3, .k = 2, .d = 1, .m = 2}},
  };
  for (const Kind& kind : kinds) {
    GenerateArgs gen;
    gen.kind = kind.name;
    gen.params = kind.params;
    gen.seed = 14;
    gen.out_path = path_of(std::string("e2e_") + kind.name + ".json");
    std::ostringstream gout, gerr;
    REQUIRE(run_generate(gen, gout, gerr) == kOk);

    SolveArgs args;
    args.in_path = gen.out_path;
    args.out_path = path_of(std::string("e2e_") + kind.name + "_report.json");
    args.algo = "privdude";
    args.no_noise = true;
    args.T_override = 500;
    std::ostringstream out, err;
    REQUIRE_MESSAGE(run_solve(args, out, err) == kOk,
                    kind.name << ": " << err.str());
    const auto j = nlohmann::json::parse(read_text_file(args.out_path));
    CHECK(j.at("audit").at("verdict").at("billboard_ok").get<bool>());
    CHECK(j.at("audit").at("verdict").at("lambda_in_box").get<bool>());
    CHECK(j.at("ledger").at("within_budget").get<bool>());
  }
}

TEST_CASE("baseline algo writes the oracle estimate") {
  const std::string inst = path_of("base_in.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(knapsack_args(inst), gout, gerr) == kOk);
  SolveArgs args;
  args.in_path = inst;
  args.out_path = path_of("base_out.json");
  args.algo = "baseline";
  std::ostringstream out, err;
  REQUIRE(run_solve(args, out, err) == kOk);
  const auto j = nlohmann::json::parse(read_text_file(args.out_path));
  CHECK(j.at("opt").at("method").get<std::string>() == "greedy_fractional");
  CHECK(j.at("opt").at("value").get<double>() > 0.0);
}

TEST_CASE("epsilon list parsing") {
  CHECK(parse_epsilon_list("0.1,1,10") ==
        std::vector<double>{0.1, 1.0, 10.0});
  CHECK_THROWS_AS(parse_epsilon_list("1,,2"), ParameterError);
  CHECK_THROWS_AS(parse_epsilon_list("1,abc"), ParameterError);
  CHECK_THROWS_AS(parse_epsilon_list("-1"), ParameterError);
  CHECK_THROWS_AS(parse_epsilon_list(""), ParameterError);
}

TEST_CASE("sweep writes one row per (epsilon, trial)") {
  const std::string inst = path_of("sweep_in.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(knapsack_args(inst), gout, gerr) == kOk);

  SweepArgs args;
  args.in_path = inst;
  args.out_csv = path_of("sweep.csv");
  args.epsilons = "1.0";
  args.trials = 1;
  args.T_override = 200;
  std::ostringstream out, err;
  REQUIRE(run_sweep(args, out, err) == kOk);

  const std::string csv = read_text_file(args.out_csv);
  std::istringstream lines(csv);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  CHECK(header ==
        "epsilon,seed,objective,opt,gap,violation,rp_bound,satisfied_frac");
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));

  SweepArgs bad = args;
  bad.epsilons = "1.0,zap";
  std::ostringstream out2, err2;
  CHECK(run_sweep(bad, out2, err2) == kUsage);
}

TEST_CASE("violation medians fall as epsilon grows") {
  GenerateArgs gen;
  gen.kind = "knapsack";
  gen.params.n = 12;
  gen.params.k = 1;
  gen.seed = 11;
  gen.out_path = path_of("sweep_mono.json");
  std::ostringstream gout, gerr;
  REQUIRE(run_generate(gen, gout, gerr) == kOk);

  // Tighten capacity to a fifth of the total weight: scarcity keeps the
  // equilibrium price high, so extra dual noise reliably converts into
  // constraint violation rather than over-pricing.
  StoredInstance stored = load_instance(gen.out_path);
  auto& knap = std::get<KnapsackInstance>(stored.instance);
  double total = 0.0;
  for (const auto& w : knap.weights) total += w[0];
  knap.capacities = {0.2 * total};
  save_instance(stored.instance, stored.seed, gen.out_path);

  SweepArgs args;
  args.in_path = gen.out_path;
  args.out_csv = path_of("sweep_mono.csv");
  args.epsilons = "0.1,10";
  args.trials = 50;
  args.T_override = 2000;
  args.seed = 5;
  std::ostringstream out, err;
  REQUIRE(run_sweep(args, out, err) == kOk);

  std::istringstream lines(read_text_file(args.out_csv));
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> low, high;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> row;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    REQUIRE(row.size() == 8);
    const double eps = std::stod(row[0]);
    const double violation = std::stod(row[5]);
    (eps < 1.0 ? low : high).push_back(violation);
  }
  REQUIRE(low.size() == 50);
  REQUIRE(high.size() == 50);
  std::sort(low.begin(), low.end());
  std::sort(high.begin(), high.end());
  CHECK(low[25] >= high[25]);
}
