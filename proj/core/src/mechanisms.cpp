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

#include "privdude/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "privdude/parallel.hpp"
#include "privdude/rng.hpp"

namespace privdude {

namespace {

void require_null_actions(const SeparableProgram& program) {
  if (!program.all_have_null_action()) {
    throw PreconditionError("null action required for every agent");
  }
}

void require_packing(const SeparableProgram& program) {
  if (!program.metadata().is_packing()) {
    throw PreconditionError(
        "packing program required (metadata carries no vertex contribution "
        "floor L)");
  }
}

double truthfulness_gamma(const ProgramMetadata& meta, double epsilon,
                          double delta, double alpha, std::size_t k) {
  const double price_cap =
      meta.C_1 * meta.tau * std::sqrt(static_cast<double>(k));
  return alpha * (2.0 * std::exp(epsilon) - 1.0) +
         delta * std::max(meta.V, price_cap);
}

// Mechanisms that split the budget re-home the sub-run's ledger under the
// full (epsilon, delta) totals before appending their own entries.
BudgetLedger widen_ledger(const BudgetLedger& base, double epsilon,
                          double delta) {
  BudgetLedger out(epsilon, delta, base.rounds(), base.per_round());
  for (const auto& entry : base.entries()) out.add(entry);
  return out;
}

// Uniform index into the recorded horizon, agent-keyed so serving order
// cannot perturb other agents' draws.
std::size_t rounding_index(std::uint64_t seed, std::size_t agent_id, long T) {
  RngStream stream = RngStream::derive(
      seed, {stream_tag::kRounding, static_cast<std::uint64_t>(agent_id)});
  const double u = stream.next_unit();
  auto idx = static_cast<std::size_t>(u * static_cast<double>(T));
  return std::min<std::size_t>(idx, static_cast<std::size_t>(T - 1));
}

struct RepairResult {
  std::vector<BestResponse> favorites;  // best response at lambda_bar
  std::vector<bool> satisfied;
  long unsatisfied = 0;
};

RepairResult assess_satisfaction(const SeparableProgram& program,
                                 const SolveReport& base, double alpha) {
  RepairResult out;
  const std::size_t slots = program.oracle_count();
  out.favorites.resize(slots);
  out.satisfied.assign(slots, false);
  parallel_for(slots, [&](std::size_t slot) {
    const AgentOracle& oracle = program.oracle(slot);
    out.favorites[slot] = oracle.best_response(base.lambda_bar);
    const BestResponse& assigned = base.x_bar.parts[slot];
    const double own = assigned.value - price_of(assigned, base.lambda_bar);
    const double best = out.favorites[slot].value -
                        price_of(out.favorites[slot], base.lambda_bar);
    out.satisfied[slot] = own >= best - alpha;
  });
  for (bool s : out.satisfied) {
    if (!s) ++out.unsatisfied;
  }
  return out;
}

}  // namespace

FlagBank::FlagBank(std::span<const double> scalars, double zeta,
                   double epsilon, std::uint64_t seed, bool noise_disabled) {
  flags_.reserve(scalars.size());
  for (std::size_t j = 0; j < scalars.size(); ++j) {
    if (scalars[j] <= zeta) {
      throw PreconditionError("constraint " + std::to_string(j) +
                              " scalar does not exceed the flag margin zeta");
    }
    flags_.emplace_back(
        epsilon, scalars[j] - zeta,
        RngStream::derive(seed, {stream_tag::kSparseThreshold,
                                 static_cast<std::uint64_t>(j)}),
        noise_disabled);
  }
}

void FlagBank::query(std::size_t j, double cumulative_sum) {
  if (!flags_.at(j).halted()) {
    flags_[j].query(cumulative_sum);
  }
}

double price_of(const BestResponse& assigned,
                std::span<const double> lambda_bar) {
  if (assigned.contributions.size() != lambda_bar.size()) {
    throw DimensionError("price_of: contribution/price length mismatch");
  }
  double price = 0.0;
  for (std::size_t j = 0; j < lambda_bar.size(); ++j) {
    price += lambda_bar[j] * assigned.contributions[j];
  }
  return price;
}

bool is_satisfied(const AgentOracle& oracle, const BestResponse& assigned,
                  std::span<const double> lambda_bar, double alpha) {
  if (alpha < 0.0) throw ParameterError("alpha must be >= 0");
  const BestResponse favorite = oracle.best_response(lambda_bar);
  const double own = assigned.value - price_of(assigned, lambda_bar);
  const double best = favorite.value - price_of(favorite, lambda_bar);
  return own >= best - alpha;
}

PricedOutcome truedude(const SeparableProgram& program,
                       const SolveConfig& config, double alpha) {
  if (alpha < 0.0) throw ParameterError("alpha must be >= 0");
  require_null_actions(program);

  PricedOutcome out;
  out.alpha = alpha;
  out.base = run(program, config);

  const RepairResult repair = assess_satisfaction(program, out.base, alpha);
  const std::size_t slots = program.oracle_count();
  out.final_point.parts.resize(slots);
  out.payments.resize(slots);
  out.satisfied_pre_repair = repair.satisfied;
  out.reassigned_count = repair.unsatisfied;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    out.final_point.parts[slot] = repair.satisfied[slot]
                                      ? out.base.x_bar.parts[slot]
                                      : repair.favorites[slot];
    out.payments[slot] =
        price_of(out.final_point.parts[slot], out.base.lambda_bar);
  }
  out.base.ledger.add({"repair_post_processing", 0.0, 0.0, 1});
  out.rho = std::exp(config.epsilon);
  out.gamma = truthfulness_gamma(program.metadata(), config.epsilon,
                                 config.delta, alpha, program.k());
  return out;
}

double compute_reserve(const ProgramMetadata& metadata, double epsilon,
                       double delta, double beta, double alpha,
                       std::span<const double> scalars) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 0.5) ||
      !(beta > 0.0 && beta < 1.0) || !(alpha > 0.0)) {
    throw ParameterError("compute_reserve: parameters out of range");
  }
  const double k = static_cast<double>(scalars.size());
  const double max_b = *std::max_element(scalars.begin(), scalars.end());
  const double w = metadata.width;
  const double log_sq = std::pow(std::log(4.0 * w * w * k * k / beta), 2.0);
  const double log_half = std::sqrt(std::log(2.0 * w / delta));
  const double spread = 2.0 / metadata.tau + metadata.C_inf * k / alpha;
  return std::sqrt(3.0 * max_b) +
         160.0 * std::sqrt(8.0) * k * metadata.tau * metadata.sigma *
             metadata.C_inf / epsilon * log_sq * log_half * spread;
}

PricedOutcome tightdude(const SeparableProgram& program,
                        const SolveConfig& config, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be > 0");
  require_packing(program);
  require_null_actions(program);

  TightConfig tight;
  tight.alpha = alpha;
  tight.xi = compute_reserve(program.metadata(), config.epsilon, config.delta,
                             config.beta, alpha, program.b());
  std::size_t tightest = 0;
  tight.kappa = 0.0;
  for (std::size_t j = 0; j < program.k(); ++j) {
    const double ratio = tight.xi / program.b()[j];
    if (ratio > tight.kappa) {
      tight.kappa = ratio;
      tightest = j;
    }
  }
  if (tight.kappa >= 1.0) {
    throw PreconditionError(
        "reserve does not fit: kappa >= 1 at constraint " +
        std::to_string(tightest) + " (xi = " + std::to_string(tight.xi) +
        ", b = " + std::to_string(program.b()[tightest]) + ")");
  }

  std::vector<double> reduced = program.b();
  for (double& bj : reduced) bj -= tight.xi;
  const SeparableProgram reduced_program =
      program.with_scalars(std::move(reduced));

  SolveConfig half = config;
  half.epsilon = config.epsilon / 2.0;
  half.delta = config.delta / 2.0;
  half.beta = config.beta / 2.0;

  PricedOutcome out;
  out.alpha = alpha;
  out.base = run(reduced_program, half);
  out.base.ledger = widen_ledger(out.base.ledger, config.epsilon,
                                 config.delta);

  const RepairResult repair =
      assess_satisfaction(reduced_program, out.base, alpha);
  const std::size_t slots = program.oracle_count();
  out.final_point.parts.resize(slots);
  out.payments.resize(slots);
  out.satisfied_pre_repair = repair.satisfied;
  out.reassigned_count = repair.unsatisfied;
  parallel_for(slots, [&](std::size_t slot) {
    if (repair.satisfied[slot]) {
      // A uniformly random recorded best response; recomputed from the dual
      // history, which reproduces the recorded play bitwise.
      const std::size_t t = rounding_index(
          config.seed, program.agent_id(slot), out.base.schedule.T);
      out.final_point.parts[slot] =
          program.oracle(slot).best_response(out.base.history.iterates[t]);
    } else {
      out.final_point.parts[slot] = repair.favorites[slot];
    }
  });
  for (std::size_t slot = 0; slot < slots; ++slot) {
    out.payments[slot] =
        price_of(out.final_point.parts[slot], out.base.lambda_bar);
  }

  // Exact feasibility against the ORIGINAL scalars is the whole point.
  const std::vector<double> coupling =
      evaluate_coupling(program, out.final_point);
  for (std::size_t j = 0; j < coupling.size(); ++j) {
    if (coupling[j] > 1e-9) {
      throw InternalError("tightened solve produced an infeasible output at "
                          "constraint " +
                          std::to_string(j));
    }
  }

  out.base.ledger.add({"reserve_and_rounding", 0.0, 0.0, 1});
  out.rho = std::exp(config.epsilon);
  out.gamma = truthfulness_gamma(program.metadata(), config.epsilon,
                                 config.delta, alpha, program.k());
  out.tight = tight;
  return out;
}

RoundOutcome rounddude(const SeparableProgram& program,
                       const SolveConfig& config) {
  require_packing(program);
  require_null_actions(program);
  if (*program.metadata().min_vertex_contribution <= 0.0) {
    throw PreconditionError("rounddude needs L > 0");
  }

  SolveConfig half = config;
  half.epsilon = config.epsilon / 2.0;
  half.delta = config.delta / 2.0;
  half.beta = config.beta / 3.0;

  RoundOutcome out;
  out.base = run(program, half);
  out.base.ledger = widen_ledger(out.base.ledger, config.epsilon,
                                 config.delta);

  const std::size_t k = program.k();
  const std::size_t slots = program.oracle_count();
  const double n_agents = static_cast<double>(program.agent_count());
  const long flag_queries = static_cast<long>(slots) * static_cast<long>(k);
  const double delta_sv = config.delta / 2.0;
  out.flag_epsilon =
      (config.epsilon / 2.0) /
      (2.0 * std::sqrt(8.0 * static_cast<double>(flag_queries) *
                       std::log(1.0 / delta_sv)));
  out.zeta = 8.0 *
             (std::log(n_agents) + std::log(3.0 * static_cast<double>(k) /
                                            config.beta)) /
             out.flag_epsilon;
  out.thresholds.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (program.b()[j] <= out.zeta) {
      throw PreconditionError("constraint " + std::to_string(j) +
                              " scalar must exceed zeta = " +
                              std::to_string(out.zeta));
    }
    out.thresholds[j] = program.b()[j] - out.zeta;
  }

  FlagBank bank(program.b(), out.zeta, out.flag_epsilon, config.seed,
                !config.noise_enabled);

  out.final_point.parts.resize(slots);
  out.served.assign(slots, false);
  std::vector<double> cumulative(k, 0.0);
  // Strictly sequential in agent order: the flag semantics depend on it.
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const AgentOracle& oracle = program.oracle(slot);
    const std::size_t t = rounding_index(config.seed, program.agent_id(slot),
                                         out.base.schedule.T);
    const BestResponse rounded =
        oracle.best_response(out.base.history.iterates[t]);
    bool served = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (rounded.contributions[j] > 0.0 && bank.raised(j)) {
        served = false;
        break;
      }
    }
    out.served[slot] = served;
    out.final_point.parts[slot] = served ? rounded : oracle.null_action();
    for (std::size_t j = 0; j < k; ++j) {
      cumulative[j] += out.final_point.parts[slot].contributions[j];
    }
    for (std::size_t j = 0; j < k; ++j) {
      bank.query(j, cumulative[j]);
    }
  }

  out.base.ledger.add({"sparse_flags", config.epsilon / 2.0,
                       config.delta / 2.0, 1});
  out.base.ledger.add({"sv_query_budget", out.flag_epsilon, 0.0,
                       flag_queries});
  return out;
}

}  // namespace privdude
