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

#include "privdude/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privdude/errors.hpp"

namespace privdude {

BruteForceResult brute_force_opt(const SeparableProgram& program,
                                 std::size_t max_combinations) {
  const std::size_t slots = program.oracle_count();
  std::vector<std::vector<BestResponse>> vertices(slots);
  std::size_t combinations = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    vertices[s] = program.oracle(s).vertex_enumeration();
    if (vertices[s].empty()) {
      throw InternalError("oracle returned an empty vertex list");
    }
    if (combinations > max_combinations / vertices[s].size()) {
      throw ScaleError("joint vertex enumeration exceeds the cap");
    }
    combinations *= vertices[s].size();
  }

  const std::size_t k = program.k();
  BruteForceResult best;
  std::vector<std::size_t> choice(slots, 0);
  std::vector<double> totals(k, 0.0);
  for (;;) {
    totals.assign(k, 0.0);
    double value = 0.0;
    for (std::size_t s = 0; s < slots; ++s) {
      const BestResponse& v = vertices[s][choice[s]];
      value += v.value;
      for (std::size_t j = 0; j < k; ++j) totals[j] += v.contributions[j];
    }
    bool feasible = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (totals[j] > program.b()[j] + 1e-9) {
        feasible = false;
        break;
      }
    }
    if (feasible && (!best.feasible || value > best.value)) {
      best.feasible = true;
      best.value = value;
      best.witness = choice;
    }
    // next combination, mixed radix; an agentless program evaluates the
    // single empty combination (value 0) and stops.
    std::size_t s = 0;
    while (s < slots && ++choice[s] == vertices[s].size()) {
      choice[s] = 0;
      ++s;
    }
    if (s == slots) break;
  }
  return best;
}

double greedy_fractional_knapsack(std::span<const double> values,
                                  std::span<const double> weights,
                                  double capacity) {
  if (values.size() != weights.size()) {
    throw DimensionError("greedy knapsack: values/weights length mismatch");
  }
  if (capacity < 0.0) throw ParameterError("capacity must be >= 0");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const bool a_free = weights[a] <= 0.0;
                     const bool b_free = weights[b] <= 0.0;
                     if (a_free != b_free) return a_free;
                     if (a_free) return false;
                     return values[a] / weights[a] > values[b] / weights[b];
                   });
  double room = capacity;
  double total = 0.0;
  for (std::size_t i : order) {
    if (values[i] <= 0.0) continue;
    if (weights[i] <= 0.0) {
      total += values[i];  // free item
      continue;
    }
    if (room <= 0.0) break;
    const double fraction = std::min(1.0, room / weights[i]);
    total += values[i] * fraction;
    room -= weights[i] * fraction;
  }
  return total;
}

NoiselessOptEstimate noiseless_opt(const SeparableProgram& program,
                                   long T_long, std::uint64_t seed) {
  SolveConfig config;
  config.noise_enabled = false;
  config.T_override = T_long;
  config.seed = seed;
  const SolveReport report = run(program, config);
  NoiselessOptEstimate est;
  est.value = report.audit.objective;
  est.error_bar = 2.0 * program.metadata().tau *
                  std::sqrt(static_cast<double>(program.k())) *
                  program.metadata().width /
                  std::sqrt(static_cast<double>(T_long));
  return est;
}

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

// Replays agent `slot` against the recorded dual iterates only; must walk
// the exact accumulation path the solver used.
bool billboard_match(const SolveReport& report,
                     const SeparableProgram& program, std::size_t slot) {
  ResponseMean mean;
  for (const auto& lambda : report.history.iterates) {
    mean.add(program.oracle(slot).best_response(lambda));
  }
  const BestResponse replay = mean.mean();
  const BestResponse& recorded = report.x_bar.parts[slot];
  return replay.value == recorded.value &&
         same_bits(replay.point, recorded.point) &&
         same_bits(replay.contributions, recorded.contributions);
}

}  // namespace

AuditVerdict audit(const SolveReport& report, const SeparableProgram& program,
                   double opt_value, double opt_error) {
  AuditVerdict v;
  const std::size_t k = program.k();
  v.structural_ok = report.lambda_bar.size() == k &&
                    report.x_bar.parts.size() == program.oracle_count() &&
                    report.audit.slacks.size() == k &&
                    static_cast<long>(report.history.iterates.size()) ==
                        report.schedule.T;
  if (v.structural_ok) {
    for (const auto& part : report.x_bar.parts) {
      if (part.contributions.size() != k) v.structural_ok = false;
    }
  }
  if (!v.structural_ok) return v;

  v.violation = total_violation(program, report.x_bar);
  v.violation_bound = 2.0 * report.r_p / program.metadata().tau;
  v.violation_ok = v.violation <= v.violation_bound + 1e-12;

  v.objective = objective(program, report.x_bar);
  v.objective_floor = opt_value - 2.0 * report.r_p - opt_error;
  v.objective_ok = v.objective >= v.objective_floor - 1e-12;

  v.lambda_in_box = true;
  for (double lj : report.lambda_bar) {
    if (lj < 0.0 || lj > report.schedule.box_hi) v.lambda_in_box = false;
  }

  v.billboard_ok = true;
  for (std::size_t slot = 0; slot < program.oracle_count(); ++slot) {
    if (!billboard_match(report, program, slot)) {
      v.billboard_ok = false;
      break;
    }
  }
  return v;
}

}  // namespace privdude
