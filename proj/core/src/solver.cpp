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

#include "privdude/solver.hpp"

#include <cmath>

#include "privdude/parallel.hpp"
#include "privdude/rng.hpp"

namespace privdude {

DualSchedule derive_schedule(const ProgramMetadata& metadata,
                             const SolveConfig& config, std::size_t k) {
  if (metadata.width < 1.0) {
    throw ParameterError("schedule derivation needs width >= 1");
  }
  if (!(config.beta > 0.0 && config.beta < 1.0)) {
    throw ParameterError("beta must lie in (0, 1)");
  }
  if (k == 0) throw ParameterError("k must be >= 1");

  DualSchedule s;
  const double w = metadata.width;
  if (config.T_override) {
    if (*config.T_override < 1) {
      throw ParameterError("T_override must be >= 1");
    }
    s.T = *config.T_override;
    s.t_overridden = true;
  } else {
    s.T = static_cast<long>(std::ceil(w * w));
  }
  const PerRoundBudget budget =
      per_round_budget(config.epsilon, config.delta, s.T);
  s.epsilon_prime = budget.epsilon_prime;
  s.delta_prime = budget.delta_prime;
  s.noise_std =
      config.noise_enabled
          ? gaussian_sigma(metadata.sigma, s.epsilon_prime, s.delta_prime)
          : 0.0;
  s.box_hi = 2.0 * metadata.tau;

  const double t = static_cast<double>(s.T);
  const double tk = t * static_cast<double>(k);
  if (config.noise_enabled) {
    // The 1/eps' term only exists to cover the gradient noise.
    s.eta = 2.0 * metadata.tau /
            (std::sqrt(t) *
             (w + std::log(tk / config.beta) / s.epsilon_prime));
  } else {
    s.eta = 2.0 * metadata.tau / (std::sqrt(t) * w);
  }
  return s;
}

PrimalPoint best_respond_all(const SeparableProgram& program,
                             std::span<const double> lambda) {
  PrimalPoint point;
  point.parts.resize(program.oracle_count());
  const auto respond = [&](std::size_t slot) {
    try {
      point.parts[slot] = program.oracle(slot).best_response(lambda);
    } catch (const OracleError&) {
      throw;
    } catch (const std::exception& e) {
      throw OracleError(program.agent_id(slot), e.what());
    }
  };
  // Worker fan-out only pays for itself on wide instances; results are
  // identical either way since every slot is independent.
  constexpr std::size_t kParallelAgentThreshold = 64;
  if (program.oracle_count() >= kParallelAgentThreshold) {
    parallel_for(program.oracle_count(), respond);
  } else {
    for (std::size_t slot = 0; slot < program.oracle_count(); ++slot) {
      respond(slot);
    }
  }
  return point;
}

namespace {

void add_gradient_noise(std::vector<double>& grad,
                        const DualSchedule& schedule, std::uint64_t seed,
                        long iteration) {
  if (schedule.noise_std <= 0.0) return;
  for (std::size_t j = 0; j < grad.size(); ++j) {
    RngStream stream = RngStream::derive(
        seed, {stream_tag::kGradient, static_cast<std::uint64_t>(iteration),
               static_cast<std::uint64_t>(j)});
    grad[j] += sample_gaussian(schedule.noise_std, stream);
  }
}

}  // namespace

std::vector<double> noisy_gradient(const SeparableProgram& program,
                                   const PrimalPoint& point,
                                   const DualSchedule& schedule,
                                   std::uint64_t seed, long iteration) {
  std::vector<double> grad = evaluate_coupling(program, point);
  add_gradient_noise(grad, schedule, seed, iteration);
  return grad;
}

double theoretical_rp(const ProgramMetadata& metadata,
                      const SolveConfig& config, const DualSchedule& schedule,
                      std::size_t k, std::string* source) {
  const double w = metadata.width;
  const double tau = metadata.tau;
  const double kd = static_cast<double>(k);
  const double t = static_cast<double>(schedule.T);
  if (schedule.noise_std == 0.0) {
    if (source) *source = "noiseless";
    return tau * std::sqrt(kd) * w / std::sqrt(t);
  }
  if (!schedule.t_overridden) {
    if (source) *source = "w2_formula";
    return 40.0 * std::sqrt(8.0) * kd * tau * metadata.sigma / config.epsilon *
           std::log(2.0 * w * w * kd / config.beta) *
           std::sqrt(std::log(w * w / config.delta));
  }
  if (source) *source = "actual_T";
  const double noise_term =
      2.0 * schedule.noise_std *
      std::sqrt(std::log(2.0 * t * kd / config.beta) / gaussian_tail_a());
  return tau * std::sqrt(kd) / std::sqrt(t) * (w + noise_term);
}

void ResponseMean::add(const BestResponse& r) {
  if (count == 0) {
    sum = r;
  } else {
    for (std::size_t i = 0; i < sum.point.size(); ++i) sum.point[i] += r.point[i];
    sum.value += r.value;
    for (std::size_t j = 0; j < sum.contributions.size(); ++j) {
      sum.contributions[j] += r.contributions[j];
    }
  }
  ++count;
}

BestResponse ResponseMean::mean() const {
  BestResponse out = sum;
  const double t = static_cast<double>(count);
  for (double& v : out.point) v /= t;
  out.value /= t;
  for (double& v : out.contributions) v /= t;
  return out;
}

SolveReport run(const SeparableProgram& program, const SolveConfig& config) {
  if (!(config.epsilon > 0.0) || !(config.delta > 0.0 && config.delta < 0.5) ||
      !(config.beta > 0.0 && config.beta < 1.0)) {
    throw ParameterError(
        "solve config needs epsilon > 0, delta in (0, 1/2), beta in (0, 1)");
  }
  const std::size_t k = program.k();
  const DualSchedule schedule =
      derive_schedule(program.metadata(), config, k);

  OgdConfig ogd;
  ogd.eta = schedule.eta;
  ogd.box_hi = schedule.box_hi;
  ogd.k = k;
  ogd.loss_bound = program.metadata().width;
  ogd.horizon = schedule.T;

  OgdHistory history;
  history.box_hi = schedule.box_hi;
  history.iterates.reserve(schedule.T);
  history.losses.reserve(schedule.T);
  history.noisy_losses.reserve(schedule.T);

  std::vector<ResponseMean> means(program.oracle_count());
  std::vector<double> lambda(k, 0.0);
  std::vector<double> lambda_sum(k, 0.0);

  for (long t = 1; t <= schedule.T; ++t) {
    PrimalPoint point;
    try {
      point = best_respond_all(program, lambda);
    } catch (const OracleError& e) {
      throw SolveAborted(e.agent_index(), t - 1, std::move(history), e.what());
    }
    const std::vector<double> unnoised = evaluate_coupling(program, point);
    std::vector<double> grad = unnoised;
    add_gradient_noise(grad, schedule, config.seed, t);
    // The dual player ascends on the gradient; the history stores losses in
    // the minimization convention, so it records the negated vectors.
    std::vector<double> true_loss(k), noisy_loss(k);
    for (std::size_t j = 0; j < k; ++j) {
      true_loss[j] = -unnoised[j];
      noisy_loss[j] = -grad[j];
    }
    history.iterates.push_back(lambda);
    history.losses.push_back(std::move(true_loss));
    history.noisy_losses.push_back(std::move(noisy_loss));

    for (std::size_t slot = 0; slot < means.size(); ++slot) {
      means[slot].add(point.parts[slot]);
    }
    for (std::size_t j = 0; j < k; ++j) lambda_sum[j] += lambda[j];
    lambda = step(lambda, grad, ogd);
  }

  SolveReport report;
  report.schedule = schedule;
  report.x_bar.parts.resize(means.size());
  for (std::size_t slot = 0; slot < means.size(); ++slot) {
    report.x_bar.parts[slot] = means[slot].mean();
  }
  report.lambda_bar.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    report.lambda_bar[j] = lambda_sum[j] / static_cast<double>(schedule.T);
  }
  report.history = std::move(history);

  const std::vector<double> coupling =
      evaluate_coupling(program, report.x_bar);
  report.audit.slacks.resize(k);
  for (std::size_t j = 0; j < k; ++j) report.audit.slacks[j] = -coupling[j];
  report.audit.total_violation = total_violation(program, report.x_bar);
  report.audit.objective = objective(program, report.x_bar);

  report.ledger = BudgetLedger(
      config.epsilon, config.delta, schedule.T,
      {schedule.epsilon_prime, schedule.delta_prime});
  if (config.noise_enabled) {
    report.ledger.add({"gaussian_gradient", schedule.epsilon_prime,
                       schedule.delta_prime, schedule.T});
  } else {
    report.ledger.add({"noiseless_gradient", 0.0, 0.0, schedule.T});
  }
  if (schedule.t_overridden) {
    report.ledger.add({"t_override", 0.0, 0.0, 1});
  }

  report.r_p = theoretical_rp(program.metadata(), config, schedule, k,
                              &report.r_p_source);
  report.empirical_dual_regret = empirical_regret(report.history);
  report.oracle_calls =
      schedule.T * static_cast<long>(program.oracle_count());
  return report;
}

}  // namespace privdude
