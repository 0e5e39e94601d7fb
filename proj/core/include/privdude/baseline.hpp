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

#ifndef PRIVDUDE_BASELINE_HPP
#define PRIVDUDE_BASELINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "privdude/model.hpp"
#include "privdude/solver.hpp"

namespace privdude {

struct BruteForceResult {
  bool feasible = false;
  double value = 0.0;                 // meaningful only when feasible
  std::vector<std::size_t> witness;   // chosen vertex index per oracle slot
};

// Exhaustive maximum over joint vertex choices subject to the coupling
// constraints. Throws ScaleError when the cross product exceeds the cap.
BruteForceResult brute_force_opt(const SeparableProgram& program,
                                 std::size_t max_combinations = 1u << 20);

// Exact fractional optimum of the single-constraint knapsack relaxation:
// sort by density, fill, split the last item.
double greedy_fractional_knapsack(std::span<const double> values,
                                  std::span<const double> weights,
                                  double capacity);

struct NoiselessOptEstimate {
  double value = 0.0;
  double error_bar = 0.0;  // 2 tau sqrt(k) w / sqrt(T_long)
};

// Long-horizon noiseless dual decomposition as an OPT estimate with an
// explicit convergence error bar.
NoiselessOptEstimate noiseless_opt(const SeparableProgram& program,
                                   long T_long, std::uint64_t seed = 0);

// Named checks of a report against the accuracy bounds. Failures are data.
struct AuditVerdict {
  bool structural_ok = false;
  bool violation_ok = false;
  bool objective_ok = false;
  bool lambda_in_box = false;
  bool billboard_ok = false;

  double violation = 0.0;
  double violation_bound = 0.0;  // 2 R_p / tau
  double objective = 0.0;
  double objective_floor = 0.0;  // opt - 2 R_p - opt_error

  bool all_ok() const {
    return structural_ok && violation_ok && objective_ok && lambda_in_box &&
           billboard_ok;
  }
};

// violation <= 2 R_p / tau; objective >= opt - 2 R_p - opt_error; lambda_bar
// inside [0, 2 tau]^k; and the billboard recomputation: every agent's
// averaged best response, replayed from the recorded dual history alone,
// must reproduce x_bar bitwise.
AuditVerdict audit(const SolveReport& report, const SeparableProgram& program,
                   double opt_value, double opt_error);

}  // namespace privdude

#endif  // PRIVDUDE_BASELINE_HPP
