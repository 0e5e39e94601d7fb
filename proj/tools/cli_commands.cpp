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

#include "cli_commands.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "privdude/baseline.hpp"
#include "privdude/errors.hpp"
#include "privdude/mechanisms.hpp"
#include "privdude/parallel.hpp"
#include "privdude/rng.hpp"
#include "privdude/serialize.hpp"
#include "privdude/solver.hpp"

namespace privdude::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

struct OptEstimate {
  double value = 0.0;
  double error = 0.0;
  std::string method;
};

// Exact where computable, noiseless long-run elsewhere.
OptEstimate estimate_opt(const Instance& instance,
                         const SeparableProgram& program,
                         std::uint64_t seed) {
  OptEstimate est;
  if (const auto* knap = std::get_if<KnapsackInstance>(&instance);
      knap != nullptr && knap->k() == 1) {
    std::vector<double> weights(knap->n());
    for (std::size_t i = 0; i < knap->n(); ++i) {
      weights[i] = knap->weights[i][0];
    }
    est.value = greedy_fractional_knapsack(knap->values, weights,
                                           knap->capacities[0]);
    est.method = "greedy_fractional";
    return est;
  }
  try {
    const BruteForceResult brute = brute_force_opt(program);
    est.value = brute.feasible ? brute.value : 0.0;
    est.method = brute.feasible ? "brute_force" : "brute_force_infeasible";
    return est;
  } catch (const ScaleError&) {
    const NoiselessOptEstimate noiseless =
        noiseless_opt(program, 20000, seed);
    est.value = noiseless.value;
    est.error = noiseless.error_bar;
    est.method = "noiseless_T20000";
    return est;
  }
}

json schedule_to_json(const DualSchedule& s) {
  return {{"T", s.T},
          {"epsilon_prime", s.epsilon_prime},
          {"delta_prime", s.delta_prime},
          {"eta", s.eta},
          {"noise_std", s.noise_std},
          {"box_hi", s.box_hi},
          {"t_overridden", s.t_overridden}};
}

json ledger_to_json(const BudgetLedger& ledger) {
  json entries = json::array();
  for (const auto& e : ledger.entries()) {
    entries.push_back({{"label", e.label},
                       {"epsilon", e.epsilon},
                       {"delta", e.delta},
                       {"count", e.count}});
  }
  return {{"total_epsilon", ledger.total_epsilon()},
          {"total_delta", ledger.total_delta()},
          {"rounds", ledger.rounds()},
          {"epsilon_prime", ledger.per_round().epsilon_prime},
          {"delta_prime", ledger.per_round().delta_prime},
          {"within_budget", ledger.within_budget()},
          {"entries", entries}};
}

json point_to_json(const SeparableProgram& program, const PrimalPoint& point) {
  json parts = json::array();
  for (std::size_t slot = 0; slot < point.parts.size(); ++slot) {
    parts.push_back({{"agent", program.agent_id(slot)},
                     {"point", point.parts[slot].point},
                     {"value", point.parts[slot].value},
                     {"contributions", point.parts[slot].contributions}});
  }
  return parts;
}

json verdict_to_json(const AuditVerdict& v) {
  return {{"structural_ok", v.structural_ok},
          {"violation_ok", v.violation_ok},
          {"objective_ok", v.objective_ok},
          {"lambda_in_box", v.lambda_in_box},
          {"billboard_ok", v.billboard_ok},
          {"all_ok", v.all_ok()},
          {"violation", v.violation},
          {"violation_bound", v.violation_bound},
          {"objective", v.objective},
          {"objective_floor", v.objective_floor}};
}

json base_report_json(const SolveReport& report,
                      const SeparableProgram& program,
                      const OptEstimate& opt) {
  const AuditVerdict verdict = audit(report, program, opt.value, opt.error);
  json j;
  j["schedule"] = schedule_to_json(report.schedule);
  j["lambda_bar"] = report.lambda_bar;
  j["x_bar"] = point_to_json(program, report.x_bar);
  j["audit"] = {{"objective", report.audit.objective},
                {"total_violation", report.audit.total_violation},
                {"slacks", report.audit.slacks},
                {"opt", {{"value", opt.value},
                         {"error", opt.error},
                         {"method", opt.method}}},
                {"verdict", verdict_to_json(verdict)}};
  j["r_p"] = report.r_p;
  j["r_p_source"] = report.r_p_source;
  j["empirical_dual_regret"] = report.empirical_dual_regret;
  j["ledger"] = ledger_to_json(report.ledger);
  j["timings"] = {{"rounds", report.schedule.T},
                  {"oracle_calls", report.oracle_calls}};
  return j;
}

SolveConfig config_from(const SolveArgs& args) {
  SolveConfig config;
  config.epsilon = args.epsilon;
  config.delta = args.delta;
  config.beta = args.beta;
  config.noise_enabled = !args.no_noise;
  config.T_override = args.T_override;
  config.seed = args.seed;
  return config;
}

json config_to_json(const SolveArgs& args) {
  json j = {{"algo", args.algo},       {"epsilon", args.epsilon},
            {"delta", args.delta},     {"beta", args.beta},
            {"alpha", args.alpha},     {"seed", args.seed},
            {"noise_enabled", !args.no_noise}};
  if (args.T_override) j["T_override"] = *args.T_override;
  return j;
}

double satisfied_fraction(const SeparableProgram& program,
                          const SolveReport& report, double alpha) {
  const std::size_t slots = program.oracle_count();
  if (slots == 0) return 1.0;
  long satisfied = 0;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    if (is_satisfied(program.oracle(slot), report.x_bar.parts[slot],
                     report.lambda_bar, alpha)) {
      ++satisfied;
    }
  }
  return static_cast<double>(satisfied) / static_cast<double>(slots);
}

struct SweepRow {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double opt = 0.0;
  double gap = 0.0;
  double violation = 0.0;
  double rp_bound = 0.0;
  double satisfied_frac = 0.0;
};

SweepRow sweep_trial(const SeparableProgram& program, const SweepArgs& args,
                     const OptEstimate& opt, double epsilon,
                     std::uint64_t trial_seed) {
  SolveArgs solve_args;
  solve_args.algo = args.algo;
  solve_args.epsilon = epsilon;
  solve_args.delta = args.delta;
  solve_args.beta = args.beta;
  solve_args.alpha = args.alpha;
  solve_args.seed = trial_seed;
  solve_args.T_override = args.T_override;
  solve_args.no_noise = args.no_noise;
  const SolveConfig config = config_from(solve_args);

  SweepRow row;
  row.epsilon = epsilon;
  row.seed = trial_seed;
  row.opt = opt.value;
  if (args.algo == "privdude") {
    const SolveReport report = run(program, config);
    row.objective = report.audit.objective;
    row.violation = report.audit.total_violation;
    row.rp_bound = report.r_p;
    row.satisfied_frac = satisfied_fraction(program, report, args.alpha);
  } else if (args.algo == "truedude" || args.algo == "tightdude") {
    const PricedOutcome outcome =
        args.algo == "truedude" ? truedude(program, config, args.alpha)
                                : tightdude(program, config, args.alpha);
    row.objective = objective(program, outcome.final_point);
    row.violation = total_violation(program, outcome.final_point);
    row.rp_bound = outcome.base.r_p;
    long satisfied = 0;
    for (bool s : outcome.satisfied_pre_repair) satisfied += s ? 1 : 0;
    row.satisfied_frac = outcome.satisfied_pre_repair.empty()
                             ? 1.0
                             : static_cast<double>(satisfied) /
                                   static_cast<double>(
                                       outcome.satisfied_pre_repair.size());
  } else if (args.algo == "rounddude") {
    const RoundOutcome outcome = rounddude(program, config);
    row.objective = objective(program, outcome.final_point);
    row.violation = total_violation(program, outcome.final_point);
    row.rp_bound = outcome.base.r_p;
    long served = 0;
    for (bool s : outcome.served) served += s ? 1 : 0;
    row.satisfied_frac =
        outcome.served.empty()
            ? 1.0
            : static_cast<double>(served) /
                  static_cast<double>(outcome.served.size());
  } else {
    throw ParameterError("sweep supports privdude, truedude, tightdude, "
                         "rounddude; got " +
                         args.algo);
  }
  row.gap = row.opt - row.objective;
  return row;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SolveAborted*>(&e)) return kInternal;
  if (dynamic_cast<const InternalError*>(&e)) return kInternal;
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  return kUsage;  // parameters, preconditions, dimensions, scale, state
}

std::vector<double> parse_epsilon_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) throw ParameterError("empty entry in epsilon list");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ParameterError("malformed epsilon: " + token);
    }
    while (used < token.size() &&
           std::isspace(static_cast<unsigned char>(token[used]))) {
      ++used;
    }
    if (used != token.size() || !(value > 0.0)) {
      throw ParameterError("malformed epsilon: " + token);
    }
    out.push_back(value);
  }
  if (out.empty()) throw ParameterError("epsilon list is empty");
  return out;
}

int run_generate(const GenerateArgs& args, std::ostream& out,
                 std::ostream& err) {
  try {
    const ProblemKind kind = kind_from_name(args.kind);
    const Instance instance = generate(kind, args.params, args.seed);
    const SeparableProgram program = to_program(instance);
    save_instance(instance, args.seed, args.out_path);
    const ProgramMetadata& meta = program.metadata();
    out << "kind=" << kind_name(kind) << " n=" << program.agent_count()
        << " k=" << program.k() << " seed=" << args.seed << "\n";
    out << "sigma=" << fmt17(meta.sigma) << " tau=" << fmt17(meta.tau)
        << " width=" << fmt17(meta.width) << " V=" << fmt17(meta.V)
        << " C_inf=" << fmt17(meta.C_inf) << " C_1=" << fmt17(meta.C_1);
    if (meta.min_vertex_contribution) {
      out << " L=" << fmt17(*meta.min_vertex_contribution);
    }
    out << "\n";
    out << "wrote " << args.out_path << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    const StoredInstance stored = load_instance(args.in_path);
    const SeparableProgram program = to_program(stored.instance);
    const SolveConfig config = config_from(args);
    const OptEstimate opt = estimate_opt(stored.instance, program, args.seed);

    json j;
    j["config"] = config_to_json(args);
    if (args.algo == "privdude") {
      const SolveReport report = run(program, config);
      j.update(base_report_json(report, program, opt));
    } else if (args.algo == "truedude") {
      const PricedOutcome outcome = truedude(program, config, args.alpha);
      j.update(base_report_json(outcome.base, program, opt));
      j["final_point"] = point_to_json(program, outcome.final_point);
      j["final_objective"] = objective(program, outcome.final_point);
      j["final_total_violation"] =
          total_violation(program, outcome.final_point);
      j["payments"] = outcome.payments;
      j["satisfied_pre_repair"] = outcome.satisfied_pre_repair;
      j["reassigned_count"] = outcome.reassigned_count;
      j["rho"] = outcome.rho;
      j["gamma"] = outcome.gamma;
    } else if (args.algo == "tightdude") {
      const PricedOutcome outcome = tightdude(program, config, args.alpha);
      std::vector<double> reduced = program.b();
      for (double& bj : reduced) bj -= outcome.tight->xi;
      const SeparableProgram reduced_program =
          program.with_scalars(std::move(reduced));
      j.update(base_report_json(outcome.base, reduced_program, opt));
      j["final_point"] = point_to_json(program, outcome.final_point);
      j["final_objective"] = objective(program, outcome.final_point);
      j["final_total_violation"] =
          total_violation(program, outcome.final_point);
      j["payments"] = outcome.payments;
      j["satisfied_pre_repair"] = outcome.satisfied_pre_repair;
      j["reassigned_count"] = outcome.reassigned_count;
      j["rho"] = outcome.rho;
      j["gamma"] = outcome.gamma;
      j["tight"] = {{"alpha", outcome.tight->alpha},
                    {"xi", outcome.tight->xi},
                    {"kappa", outcome.tight->kappa}};
    } else if (args.algo == "rounddude") {
      const RoundOutcome outcome = rounddude(program, config);
      j.update(base_report_json(outcome.base, program, opt));
      j["final_point"] = point_to_json(program, outcome.final_point);
      j["final_objective"] = objective(program, outcome.final_point);
      j["final_total_violation"] =
          total_violation(program, outcome.final_point);
      j["round"] = {{"zeta", outcome.zeta},
                    {"thresholds", outcome.thresholds},
                    {"flag_epsilon", outcome.flag_epsilon},
                    {"served", outcome.served}};
    } else if (args.algo == "baseline") {
      j["opt"] = {{"value", opt.value},
                  {"error", opt.error},
                  {"method", opt.method}};
    } else {
      throw ParameterError("unknown algorithm: " + args.algo);
    }

    write_text_file(args.out_path, j.dump(2) + "\n");
    out << args.algo << " wrote " << args.out_path << "\n";
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    err << "wall_ms=" << elapsed.count() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "solve: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<double> epsilons = parse_epsilon_list(args.epsilons);
    if (args.trials < 1) throw ParameterError("trials must be >= 1");
    const StoredInstance stored = load_instance(args.in_path);
    const SeparableProgram program = to_program(stored.instance);
    const OptEstimate opt = estimate_opt(stored.instance, program, args.seed);

    const std::size_t total =
        epsilons.size() * static_cast<std::size_t>(args.trials);
    std::vector<SweepRow> rows(total);
    // Trials run concurrently with per-trial derived seeds; rows land in
    // fixed (epsilon, trial) order regardless of scheduling.
    parallel_for(total, [&](std::size_t idx) {
      const std::size_t e = idx / static_cast<std::size_t>(args.trials);
      const std::size_t trial = idx % static_cast<std::size_t>(args.trials);
      const std::uint64_t trial_seed =
          mix64(args.seed ^ mix64((e << 20) + trial + 1));
      rows[idx] = sweep_trial(program, args, opt, epsilons[e], trial_seed);
    });

    std::ostringstream csv;
    csv << "epsilon,seed,objective,opt,gap,violation,rp_bound,"
           "satisfied_frac\n";
    for (const SweepRow& row : rows) {
      csv << fmt17(row.epsilon) << ',' << row.seed << ','
          << fmt17(row.objective) << ',' << fmt17(row.opt) << ','
          << fmt17(row.gap) << ',' << fmt17(row.violation) << ','
          << fmt17(row.rp_bound) << ',' << fmt17(row.satisfied_frac) << '\n';
    }
    write_text_file(args.out_csv, csv.str());
    out << "sweep wrote " << args.out_csv << " (" << rows.size()
        << " rows)\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "sweep: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace privdude::cli
