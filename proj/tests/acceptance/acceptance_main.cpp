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
//
// Acceptance suite: every criterion prints one PASS/FAIL line with its
// measured margin; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../test_helpers.hpp"
#include "privdude/baseline.hpp"
#include "privdude/mechanisms.hpp"
#include "privdude/ogd.hpp"
#include "privdude/parallel.hpp"
#include "privdude/privacy.hpp"
#include "privdude/problems.hpp"
#include "privdude/rng.hpp"
#include "privdude/serialize.hpp"
#include "privdude/solver.hpp"

using namespace privdude;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

std::vector<Criterion> g_results;

template <typename Fn>
void run_criterion(int number, const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Criterion c{number, name, false, "", 0.0};
  try {
    c.passed = fn(c.detail);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  g_results.push_back(c);
  std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n",
              c.passed ? "PASS" : "FAIL", number, name.c_str(),
              c.detail.c_str(), c.seconds);
  std::fflush(stdout);
}

// --------------------------------------------------------------------------
// 1. Noiseless reduction on single-constraint knapsacks.

bool criterion1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const long T = 10000;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateParams params;
    params.n = 20 + (seed * 7) % 31;  // n in [20, 50]
    params.k = 1;
    const Instance instance =
        generate(ProblemKind::kKnapsack, params, 1000 + seed);
    const auto& knap = std::get<KnapsackInstance>(instance);
    const SeparableProgram program = to_program(instance);
    SolveConfig config;
    config.noise_enabled = false;
    config.T_override = T;
    const SolveReport report = run(program, config);

    std::vector<double> weights(knap.n());
    for (std::size_t i = 0; i < knap.n(); ++i) weights[i] = knap.weights[i][0];
    const double opt =
        greedy_fractional_knapsack(knap.values, weights, knap.capacities[0]);

    const double w = program.metadata().width;
    const double tau = program.metadata().tau;
    const double objective_floor =
        opt - 2.0 * tau * w / std::sqrt(static_cast<double>(T));
    const double violation_cap = 2.0 * w / std::sqrt(static_cast<double>(T));
    if (report.audit.objective >= objective_floor - 1e-9 &&
        report.audit.total_violation <= violation_cap + 1e-9) {
      ++ok;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  detail = std::to_string(ok) + "/20 instances within the noiseless bounds, " +
           std::to_string(seconds) + " s of 30 s budget";
  return ok == 20 && seconds < 30.0;
}

// --------------------------------------------------------------------------
// 2. Noisy bound audit on a fixed knapsack.

bool criterion2(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  GenerateParams params;
  params.n = 50;
  params.k = 2;
  const Instance instance = generate(ProblemKind::kKnapsack, params, 42);
  const SeparableProgram program = to_program(instance);
  const NoiselessOptEstimate opt = noiseless_opt(program, 100000, 0);

  std::vector<int> oks(50, 0);
  parallel_for(50, [&](std::size_t i) {
    SolveConfig config;
    config.epsilon = 1.0;
    config.delta = 0.01;
    config.beta = 0.1;
    config.T_override = 10000;
    config.seed = 100 + i;
    const SolveReport report = run(program, config);
    const double tau = program.metadata().tau;
    const bool violation_ok =
        report.audit.total_violation <= 2.0 * report.r_p / tau;
    const bool objective_ok = report.audit.objective >=
                              opt.value - opt.error_bar - 2.0 * report.r_p;
    oks[i] = (violation_ok && objective_ok) ? 1 : 0;
  });
  int ok = 0;
  for (int v : oks) ok += v;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  detail = std::to_string(ok) + "/50 runs inside 2R_p bounds (R_p at the "
                                "actual horizon), " +
           std::to_string(seconds) + " s of 300 s budget";
  return ok >= 45 && seconds < 300.0;
}

// --------------------------------------------------------------------------
// 3. Noisy online gradient descent regret bound.

bool criterion3(std::string& detail) {
  const std::size_t k = 2;
  const long T = 10000;
  const double X = 5.0;
  const double box_hi = 2.0;
  const double beta = 0.1;
  const PerRoundBudget budget = per_round_budget(1.0, 0.01, T);
  const double sigma =
      gaussian_sigma(1.0, budget.epsilon_prime, budget.delta_prime);

  OgdConfig config;
  config.box_hi = box_hi;
  config.k = k;
  config.loss_bound = X;
  config.horizon = T;
  const double noisy_norm =
      std::sqrt(static_cast<double>(k)) *
      (X + sigma * std::sqrt(std::log(2.0 * static_cast<double>(T) *
                                      static_cast<double>(k) / beta) /
                             gaussian_tail_a()));
  config.eta = box_hi * std::sqrt(static_cast<double>(k)) /
               (std::sqrt(static_cast<double>(T)) * noisy_norm);
  const double bound = regret_bound(config, sigma, beta);

  std::vector<int> oks(200, 0);
  parallel_for(200, [&](std::size_t trial) {
    RngStream rng = RngStream::derive(trial, {stream_tag::kTrial, 3});
    OgdHistory h;
    h.box_hi = box_hi;
    h.iterates.reserve(T);
    h.losses.reserve(T);
    std::vector<double> lambda(k, 0.0);
    std::vector<double> loss(k), neg(k);
    for (long t = 0; t < T; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        loss[j] = (rng.next_unit() < 0.5 ? -1.0 : 1.0) * X * rng.next_unit();
        neg[j] = -(loss[j] + sample_gaussian(sigma, rng));
      }
      h.iterates.push_back(lambda);
      h.losses.push_back(loss);
      lambda = step(lambda, neg, config);
    }
    oks[trial] = empirical_regret(h) <= bound ? 1 : 0;
  });
  int ok = 0;
  for (int v : oks) ok += v;
  detail = std::to_string(ok) + "/200 trials under the explicit-constant "
                                "bound";
  return ok >= 180;
}

// --------------------------------------------------------------------------
// 4. Sparse vector accuracy.

bool criterion4(std::string& detail) {
  const double epsilon = 1.0;
  const long queries = 100;
  const double beta = 0.1;
  const double alpha = sv_accuracy_bound(epsilon, queries, beta);
  const double threshold = 500.0;
  int failures = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    SparseVector sv(epsilon, threshold,
                    RngStream::derive(trial, {stream_tag::kTrial, 4}), false);
    bool failed = false;
    for (long q = 0; q < queries && !sv.halted(); ++q) {
      // Ramp across the ambiguous band: the early queries sit well below
      // threshold - alpha, the last ones well above threshold + alpha.
      const double value =
          threshold - 1.5 * alpha +
          3.0 * alpha * static_cast<double>(q) /
              static_cast<double>(queries - 1);
      const SparseVector::Answer answer = sv.query(value);
      if (answer == SparseVector::Answer::kAbove &&
          value < threshold - alpha) {
        failed = true;
      }
      if (answer == SparseVector::Answer::kBelow &&
          value > threshold + alpha) {
        failed = true;
      }
    }
    failures += failed ? 1 : 0;
  }
  const int allowed =
      200 + static_cast<int>(std::floor(3.0 * std::sqrt(2000 * 0.1 * 0.9)));
  detail = std::to_string(failures) + " accuracy failures out of 2000 "
                                      "(allowed " +
           std::to_string(allowed) + ")";
  return failures <= allowed;
}

// --------------------------------------------------------------------------
// 5. TightDude exact feasibility with vertex outputs.

bool criterion5(std::string& detail) {
  const double alpha = 1.0;
  const KnapsackInstance inst = privdude::testing::reserve_sized_knapsack(
      500, 12, 1.0, 0.01, 0.1, alpha);
  const SeparableProgram program = inst.to_program();
  std::vector<int> oks(100, 0);
  parallel_for(100, [&](std::size_t i) {
    SolveConfig config;
    config.seed = 7000 + i;
    const PricedOutcome out = tightdude(program, config, alpha);
    bool good = total_violation(program, out.final_point) == 0.0;
    for (const auto& part : out.final_point.parts) {
      const double x = part.point[0];
      if (x != 0.0 && x != 1.0) good = false;
    }
    oks[i] = good ? 1 : 0;
  });
  int ok = 0;
  for (int v : oks) ok += v;
  detail = std::to_string(ok) + "/100 runs exactly feasible with vertex "
                                "outputs";
  return ok == 100;
}

// --------------------------------------------------------------------------
// 6. RoundDude feasibility.

bool criterion6(std::string& detail) {
  GenerateParams params;
  params.n = 30;
  params.k = 2;
  KnapsackInstance inst =
      std::get<KnapsackInstance>(generate(ProblemKind::kKnapsack, params, 60));
  // zeta depends only on (epsilon, delta, beta, n, k); probe it once.
  KnapsackInstance probe = inst;
  probe.capacities = {1.0e9, 1.0e9};
  SolveConfig probe_config;
  probe_config.noise_enabled = false;
  const double zeta = rounddude(probe.to_program(), probe_config).zeta;
  inst.capacities = {1.5 * zeta, 1.5 * zeta};
  const SeparableProgram program = inst.to_program();

  std::vector<int> oks(200, 0);
  parallel_for(200, [&](std::size_t i) {
    SolveConfig config;
    config.seed = 900 + i;
    const RoundOutcome out = rounddude(program, config);
    oks[i] = total_violation(program, out.final_point) == 0.0 ? 1 : 0;
  });
  int ok = 0;
  for (int v : oks) ok += v;
  detail = std::to_string(ok) + "/200 rounded outputs feasible";
  return ok >= 180;
}

// --------------------------------------------------------------------------
// 7. Unsatisfied-count bound for TrueDude.

bool criterion7(std::string& detail) {
  GenerateParams params;
  params.n = 50;
  params.k = 1;
  const SeparableProgram program =
      to_program(generate(ProblemKind::kKnapsack, params, 70));
  std::vector<int> oks(50, 0);
  parallel_for(50, [&](std::size_t i) {
    SolveConfig config;
    config.epsilon = 1.0;
    config.delta = 0.01;
    config.beta = 0.1;
    config.seed = 300 + i;
    // alpha = R_p / 5, with R_p known before the run from the w^2 formula.
    const DualSchedule schedule =
        derive_schedule(program.metadata(), config, program.k());
    const double rp =
        theoretical_rp(program.metadata(), config, schedule, program.k());
    const PricedOutcome out = truedude(program, config, rp / 5.0);
    oks[i] = static_cast<double>(out.reassigned_count) <= 5.0 ? 1 : 0;
  });
  int ok = 0;
  for (int v : oks) ok += v;
  detail = std::to_string(ok) + "/50 runs with pre-repair unsatisfied <= "
                                "R_p/alpha";
  return ok >= 45;
}

// --------------------------------------------------------------------------
// 8. Oracle equivalence against vertex enumeration.

bool criterion8(std::string& detail) {
  GenerateParams params;
  params.n = 4;
  params.k = 4;
  params.d = 2;
  params.m = 3;
  params.intervals = 2;
  params.slots = 3;
  long mismatches = 0;
  long comparisons = 0;
  for (ProblemKind kind :
       {ProblemKind::kKnapsack, ProblemKind::kDDemand, ProblemKind::kFlow,
        ProblemKind::kSchedule, ProblemKind::kSharedResource}) {
    GenerateParams p = params;
    if (kind == ProblemKind::kFlow) p.m = 6;          // 6 edges <= 12 vars
    if (kind == ProblemKind::kSchedule) p.k = 1;      // grid fixed by t x q
    const SeparableProgram program = to_program(generate(kind, p, 800));
    RngStream rng(static_cast<std::uint64_t>(kind) + 1);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> lambda(program.k());
      for (double& x : lambda) {
        x = 2.0 * program.metadata().tau * rng.next_unit();
      }
      for (std::size_t slot = 0; slot < program.oracle_count(); ++slot) {
        const BestResponse br = program.oracle(slot).best_response(lambda);
        double br_util = br.value;
        for (std::size_t j = 0; j < lambda.size(); ++j) {
          br_util -= lambda[j] * br.contributions[j];
        }
        double best = -1e300;
        for (const BestResponse& v :
             program.oracle(slot).vertex_enumeration()) {
          double util = v.value;
          for (std::size_t j = 0; j < lambda.size(); ++j) {
            util -= lambda[j] * v.contributions[j];
          }
          best = std::max(best, util);
        }
        ++comparisons;
        if (br_util < best - 1e-9) ++mismatches;
      }
    }
  }
  detail = std::to_string(mismatches) + " mismatches in " +
           std::to_string(comparisons) + " oracle-vs-enumeration checks";
  return mismatches == 0;
}

// --------------------------------------------------------------------------
// 9. Privacy plumbing: ledger identities and sampler distributions.

bool criterion9(std::string& detail) {
  int violations = 0;
  int points = 0;
  for (int ei = 0; ei < 10; ++ei) {
    const double epsilon = 0.01 * std::pow(10.0, 3.0 * ei / 9.0);
    for (int di = 0; di < 10; ++di) {
      const double delta = 1e-8 * std::pow(4.0e7, di / 9.0);
      for (long T : {1L, 3L, 10L, 42L, 100L, 1000L, 4096L, 10000L, 123457L,
                     1000000L}) {
        ++points;
        const PerRoundBudget b = per_round_budget(epsilon, delta, T);
        BudgetLedger ledger(epsilon, delta, T, b);
        if (!ledger.within_budget()) ++violations;
        // The Gaussian scale must be finite and positive on the whole grid.
        const double s = gaussian_sigma(1.0, b.epsilon_prime, b.delta_prime);
        if (!(s > 0.0) || !std::isfinite(s)) ++violations;
      }
    }
  }

  const int n = 100000;
  std::vector<double> gauss(n), lap(n);
  RngStream g(2001), l(2002);
  for (int i = 0; i < n; ++i) {
    gauss[i] = sample_gaussian(1.0, g);
    lap[i] = sample_laplace(1.0, l);
  }
  const double ks_gauss = privdude::testing::ks_statistic(
      gauss, [](double x) { return privdude::testing::normal_cdf(x); });
  const double ks_lap = privdude::testing::ks_statistic(lap, [](double x) {
    return privdude::testing::laplace_cdf(x, 1.0);
  });

  std::ostringstream s;
  s << violations << " identity violations on " << points
    << " grid points; KS gauss " << ks_gauss << ", laplace " << ks_lap;
  detail = s.str();
  return violations == 0 && ks_gauss <= 0.01 && ks_lap <= 0.01;
}

// --------------------------------------------------------------------------
// 10. CLI determinism across thread counts.

struct CliRun {
  std::string cli;
  std::filesystem::path dir;

  // Runs one command under a fixed PRIVDUDE_THREADS, captures stdout.
  bool exec(const std::string& threads, const std::string& args,
            const std::string& stdout_file) const {
    const std::string cmd = "PRIVDUDE_THREADS=" + threads + " \"" + cli +
                            "\" " + args + " > \"" +
                            (dir / stdout_file).string() + "\" 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
  }

  std::string slurp(const std::string& name) const {
    return read_text_file((dir / name).string());
  }
};

bool criterion10(std::string& detail, const std::string& cli,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  CliRun runner{cli, dir};

  struct Step {
    std::string name;
    std::string args;       // with {out} placeholder
    std::string out_file;   // product file to compare
  };
  const std::string inst = (dir / "inst.json").string();
  std::vector<Step> steps = {
      {"generate",
       "generate --kind knapsack --n 10 --k 2 --seed 9 --out {out}",
       "inst.json"},
      {"solve_privdude",
       "solve --in " + inst +
           " --algo privdude --epsilon 1 --delta 0.01 --beta 0.1 --seed 3 "
           "--T-override 300 --out {out}",
       "priv.json"},
      {"solve_truedude",
       "solve --in " + inst +
           " --algo truedude --epsilon 1 --delta 0.01 --beta 0.1 --alpha 0.2 "
           "--seed 3 --T-override 300 --out {out}",
       "true.json"},
      {"solve_baseline",
       "solve --in " + inst + " --algo baseline --seed 3 --out {out}",
       "base.json"},
      {"sweep",
       "sweep --in " + inst +
           " --epsilons 0.5,2 --trials 2 --seed 4 --T-override 200 "
           "--out {out}",
       "sweep.csv"},
  };

  int mismatches = 0;
  for (const Step& step : steps) {
    std::vector<std::string> products, stdouts;
    int variant = 0;
    for (const char* threads : {"1", "4", "1"}) {
      const std::string out_name =
          "v" + std::to_string(variant) + "_" + step.out_file;
      std::string args = step.args;
      const std::string placeholder = "{out}";
      args.replace(args.find(placeholder), placeholder.size(),
                   (dir / out_name).string());
      const std::string stdout_name =
          "v" + std::to_string(variant) + "_" + step.name + ".stdout";
      if (!runner.exec(threads, args, stdout_name)) {
        detail = step.name + " exited nonzero";
        return false;
      }
      // stdout embeds the output path, which differs per variant; compare
      // after normalizing it away.
      std::string text = runner.slurp(stdout_name);
      const std::string needle = out_name;
      for (std::size_t at = text.find(needle); at != std::string::npos;
           at = text.find(needle, at)) {
        text.replace(at, needle.size(), step.out_file);
      }
      stdouts.push_back(text);
      products.push_back(runner.slurp(out_name));
      ++variant;
    }
    if (products[0] != products[1] || products[0] != products[2]) {
      ++mismatches;
    }
    if (stdouts[0] != stdouts[1] || stdouts[0] != stdouts[2]) ++mismatches;
    // The next steps read the generated instance from its canonical name.
    if (step.name == "generate") {
      std::filesystem::copy_file(
          dir / "v0_inst.json", dir / "inst.json",
          std::filesystem::copy_options::overwrite_existing);
    }
  }
  detail = std::to_string(mismatches) +
           " byte-level mismatches across PRIVDUDE_THREADS in {1,4} over " +
           std::to_string(steps.size()) + " commands";
  return mismatches == 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::filesystem::path workdir = "acceptance_scratch";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    if (flag == "--workdir") workdir = argv[i + 1];
  }

  run_criterion(1, "noiseless reduction", criterion1);
  run_criterion(2, "noisy bound audit", criterion2);
  run_criterion(3, "noisy OGD regret bound", criterion3);
  run_criterion(4, "sparse vector accuracy", criterion4);
  run_criterion(5, "tightdude exact feasibility", criterion5);
  run_criterion(6, "rounddude feasibility", criterion6);
  run_criterion(7, "unsatisfied-count bound", criterion7);
  run_criterion(8, "oracle equivalence", criterion8);
  run_criterion(9, "privacy plumbing", criterion9);
  if (cli.empty()) {
    std::printf("[FAIL] criterion 10: CLI determinism -- no --cli path "
                "given (0.0 s)\n");
    g_results.push_back({10, "CLI determinism", false, "missing --cli", 0.0});
  } else {
    run_criterion(10, "CLI determinism", [&](std::string& detail) {
      return criterion10(detail, cli, workdir);
    });
  }

  int failed = 0;
  for (const auto& c : g_results) failed += c.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", g_results.size(), failed);
  return failed == 0 ? 0 : 1;
}
