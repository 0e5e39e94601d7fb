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

#ifndef PRIVDUDE_MECHANISMS_HPP
#define PRIVDUDE_MECHANISMS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "privdude/model.hpp"
#include "privdude/privacy.hpp"
#include "privdude/solver.hpp"

namespace privdude {

// Output of the pricing mechanisms: final per-agent points, payments at the
// averaged dual prices, satisfaction bookkeeping, and the reported
// truthfulness parameters rho = e^epsilon and
// gamma = alpha (2 e^epsilon - 1) + delta max{V, C_1 tau sqrt(k)}.
// rho and gamma are computed, never adversarially tested.
// Constraint reservation parameters for the exact-feasibility mechanism.
struct TightConfig {
  double alpha = 0.0;
  double xi = 0.0;     // computed reserve
  double kappa = 0.0;  // max_j xi / b_j, must stay < 1
};

struct PricedOutcome {
  PrimalPoint final_point;
  std::vector<double> payments;            // per oracle slot
  std::vector<bool> satisfied_pre_repair;  // at the configured alpha
  long reassigned_count = 0;
  double alpha = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  std::optional<TightConfig> tight;  // set by tightdude
  SolveReport base;
};

// Rounded output with the per-agent served flags.
struct RoundOutcome {
  PrimalPoint final_point;
  std::vector<bool> served;  // per oracle slot
  double zeta = 0.0;
  std::vector<double> thresholds;  // b_j - zeta
  double flag_epsilon = 0.0;       // per-flag sparse vector budget
  SolveReport base;
};

// k sparse vectors guarding the constraints, thresholds b_j - zeta. Each
// flag raises at most once; queries must come in nondecreasing cumulative
// sums and strictly sequential agent order.
class FlagBank {
 public:
  FlagBank(std::span<const double> scalars, double zeta, double epsilon,
           std::uint64_t seed, bool noise_disabled);

  std::size_t size() const { return flags_.size(); }
  bool raised(std::size_t j) const { return flags_[j].halted(); }
  double threshold(std::size_t j) const { return flags_[j].threshold(); }

  // Feeds the cumulative sum to flag j unless it has already raised.
  void query(std::size_t j, double cumulative_sum);

 private:
  std::vector<SparseVector> flags_;
};

// <lambda_bar, contributions(point)>, the price the agent pays.
double price_of(const BestResponse& assigned,
                std::span<const double> lambda_bar);

// Whether the assigned point is within alpha of the agent's utility
// maximizer at the given prices.
bool is_satisfied(const AgentOracle& oracle, const BestResponse& assigned,
                  std::span<const double> lambda_bar, double alpha);

// Prices from the averaged duals; every agent not alpha-satisfied is
// reassigned to its favorite point at those prices. Requires null actions.
PricedOutcome truedude(const SeparableProgram& program,
                       const SolveConfig& config, double alpha);

// The constraint reserve:
// xi = sqrt(3 max_j b_j) + (160 sqrt(8) k tau sigma C_inf / epsilon)
//      * ln^2(4 w^2 k^2 / beta) * sqrt(ln(2 w / delta))
//      * (2 / tau + C_inf k / alpha).
// The value may exceed b_j; callers must check kappa.
double compute_reserve(const ProgramMetadata& metadata, double epsilon,
                       double delta, double beta, double alpha,
                       std::span<const double> scalars);

// Tightens the scalars by xi, solves the reduced program at half budget,
// repairs unsatisfied agents, rounds satisfied agents to a uniformly random
// recorded best response, and asserts feasibility against the original
// scalars. Exactly feasible by construction or an InternalError surfaces.
PricedOutcome tightdude(const SeparableProgram& program,
                        const SolveConfig& config, double alpha);

// Solves at half budget, rounds every agent, and serves agents in index
// order while the sparse-vector flags on their constraints are down.
RoundOutcome rounddude(const SeparableProgram& program,
                       const SolveConfig& config);

}  // namespace privdude

#endif  // PRIVDUDE_MECHANISMS_HPP
