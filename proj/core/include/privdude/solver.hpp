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

#ifndef PRIVDUDE_SOLVER_HPP
#define PRIVDUDE_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "privdude/errors.hpp"
#include "privdude/model.hpp"
#include "privdude/ogd.hpp"
#include "privdude/privacy.hpp"

namespace privdude {

struct SolveConfig {
  double epsilon = 1.0;
  double delta = 0.01;
  double beta = 0.1;
  bool noise_enabled = true;
  // Desk-scale escape hatch: caps (or extends) the w^2 iteration count. The
  // regret constant is then recomputed for the actual horizon.
  std::optional<long> T_override;
  std::uint64_t seed = 0;
};

// Run parameters derived from the metadata: T = w^2 unless overridden,
// (epsilon', delta') from the per-round budget, Gaussian scale for the
// gradient release, step size, and the dual box cap 2*tau.
struct DualSchedule {
  long T = 0;
  double epsilon_prime = 0.0;
  double delta_prime = 0.0;
  double eta = 0.0;
  double noise_std = 0.0;
  double box_hi = 0.0;
  bool t_overridden = false;
};

struct SolveReport {
  PrimalPoint x_bar;               // exact mean of the T best responses
  std::vector<double> lambda_bar;  // mean of the T dual iterates
  OgdHistory history;              // dual iterates + losses (min convention)
  struct Audit {
    double total_violation = 0.0;
    std::vector<double> slacks;  // b_j - sum_i c_j(x_bar), per constraint
    double objective = 0.0;
  } audit;
  BudgetLedger ledger;
  double r_p = 0.0;          // dual-regret constant used by bound audits
  std::string r_p_source;    // "noiseless" | "w2_formula" | "actual_T"
  double empirical_dual_regret = 0.0;
  DualSchedule schedule;
  long oracle_calls = 0;
};

// Thrown when an agent oracle fails mid-run; carries the completed rounds
// and the dual history up to the failure.
class SolveAborted : public Error {
 public:
  SolveAborted(std::size_t agent_id, long completed_rounds,
               OgdHistory history, const std::string& what)
      : Error("solve aborted at round " + std::to_string(completed_rounds + 1) +
              " by agent " + std::to_string(agent_id) + ": " + what),
        agent_id_(agent_id),
        completed_rounds_(completed_rounds),
        history_(std::move(history)) {}

  std::size_t agent_id() const { return agent_id_; }
  long completed_rounds() const { return completed_rounds_; }
  const OgdHistory& partial_history() const { return history_; }

 private:
  std::size_t agent_id_;
  long completed_rounds_;
  OgdHistory history_;
};

// T = w^2 (or the override); eta = 2 tau / (sqrt(T) (w + ln(Tk/beta)/eps'))
// with noise, 2 tau / (sqrt(T) w) without. Throws for width < 1.
DualSchedule derive_schedule(const ProgramMetadata& metadata,
                             const SolveConfig& config, std::size_t k);

// One best response per oracle (agent 0 included), computed independently;
// parallel across agents. Oracle errors propagate with the agent id.
PrimalPoint best_respond_all(const SeparableProgram& program,
                             std::span<const double> lambda);

// evaluate_coupling plus independent N(0, noise_std^2) per coordinate, drawn
// from the (iteration, constraint)-keyed stream.
std::vector<double> noisy_gradient(const SeparableProgram& program,
                                   const PrimalPoint& point,
                                   const DualSchedule& schedule,
                                   std::uint64_t seed, long iteration);

// The regret constant R_p: tau sqrt(k) w / sqrt(T) without noise, the
// w^2 closed form with noise at the default horizon, and the explicit
// regret-machinery form (tau sqrt(k)/sqrt(T)) (w + 2 sigma_n
// sqrt(ln(2Tk/beta)/a)) when the horizon was overridden.
double theoretical_rp(const ProgramMetadata& metadata,
                      const SolveConfig& config, const DualSchedule& schedule,
                      std::size_t k, std::string* source = nullptr);

// The full private dual-decomposition loop: T rounds of best responses,
// noisy gradient release, and projected dual ascent from lambda = 0, then
// averaging. Deterministic given (program, config), independent of
// PRIVDUDE_THREADS.
SolveReport run(const SeparableProgram& program, const SolveConfig& config);

// Shared accumulator so billboard replays reproduce x_bar bitwise: both the
// solver and the audit must average per-agent responses through this exact
// code path.
struct ResponseMean {
  BestResponse sum;
  long count = 0;
  void add(const BestResponse& r);
  BestResponse mean() const;
};

}  // namespace privdude

#endif  // PRIVDUDE_SOLVER_HPP
