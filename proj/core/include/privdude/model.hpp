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

#ifndef PRIVDUDE_MODEL_HPP
#define PRIVDUDE_MODEL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace privdude {

// One oracle answer: the chosen point in the agent's own coordinates, its
// objective value, and its contribution to each coupling constraint. The
// solver only ever sees this triple, never the agent's private structure.
struct BestResponse {
  std::vector<double> point;
  double value = 0.0;
  std::vector<double> contributions;
};

// Per-agent best-response oracle. Oracles are pure functions of
// (private data, lambda): immutable after construction and safe to call
// concurrently.
class AgentOracle {
 public:
  virtual ~AgentOracle() = default;

  // Maximizes value(x) - <lambda, contributions(x)> over the agent's own
  // feasible set. lambda must be nonnegative with one entry per coupling
  // constraint.
  virtual BestResponse best_response(std::span<const double> lambda) const = 0;

  // Whether the feasible set contains a point with zero value and zero
  // contributions. Required by the pricing mechanisms.
  virtual bool has_null_action() const { return true; }

  // The opt-out point: zero value, all-zero contributions.
  virtual BestResponse null_action() const;

  // All vertices of the agent's feasible polytope, desk scale only.
  virtual std::vector<BestResponse> vertex_enumeration() const = 0;

  // Membership test for the agent's own feasible set.
  virtual bool is_feasible(std::span<const double> point) const = 0;

  virtual std::size_t point_dimension() const = 0;
  virtual std::size_t constraint_count() const = 0;
};

// Class-level constants of a problem family. Supplied by generators, not
// inferred: the analysis treats them as analytically known.
struct ProgramMetadata {
  double sigma = 0.0;   // gradient sensitivity bound
  double tau = 1.0;     // dual bound
  double width = 1.0;   // coupling slack/violation magnitude bound
  double V = 1.0;       // per-agent objective upper bound
  double C_inf = 1.0;   // per-agent per-constraint contribution bound
  double C_1 = 1.0;     // per-agent total contribution bound
  std::optional<double> min_vertex_contribution;  // L, packing programs only

  bool is_packing() const { return min_vertex_contribution.has_value(); }
};

// A linearly separable convex program: n private agents, an optional public
// agent 0, and k coupling constraints sum_i c_j(x_i) <= b_j. Immutable after
// construction.
class SeparableProgram {
 public:
  SeparableProgram(std::vector<std::shared_ptr<const AgentOracle>> agents,
                   std::shared_ptr<const AgentOracle> agent0,
                   std::vector<double> b, ProgramMetadata metadata);

  std::size_t k() const { return b_.size(); }
  const std::vector<double>& b() const { return b_; }
  const ProgramMetadata& metadata() const { return metadata_; }

  // Number of private agents (excludes agent 0).
  std::size_t agent_count() const { return agents_.size(); }
  bool has_agent0() const { return agent0_ != nullptr; }

  // Oracles in solve order: agent 0 first when present, then agents 1..n.
  std::size_t oracle_count() const {
    return agents_.size() + (agent0_ ? 1 : 0);
  }
  const AgentOracle& oracle(std::size_t slot) const;
  // External agent index of a slot: 0 for agent 0, 1..n otherwise.
  std::size_t agent_id(std::size_t slot) const;

  bool all_have_null_action() const;

  // Same oracles and metadata, different constraint scalars.
  SeparableProgram with_scalars(std::vector<double> b) const;

 private:
  std::vector<std::shared_ptr<const AgentOracle>> agents_;
  std::shared_ptr<const AgentOracle> agent0_;
  std::vector<double> b_;
  ProgramMetadata metadata_;
};

// A full primal solution: one BestResponse per oracle slot, in the
// program's slot order (agent 0 first when present).
struct PrimalPoint {
  std::vector<BestResponse> parts;
};

// Unnoised coupling gradient: l_j = sum_i contributions_i[j] - b_j.
// Positive coordinates are violated constraints.
std::vector<double> evaluate_coupling(const SeparableProgram& program,
                                      const PrimalPoint& point);

// Sum of positive parts of the coupling gradient.
double total_violation(const SeparableProgram& program,
                       const PrimalPoint& point);

// Sum of per-agent objective values.
double objective(const SeparableProgram& program, const PrimalPoint& point);

struct Finding {
  // -1 for structural findings, else the agent id (0 = agent 0).
  long agent_id = -1;
  std::string message;
};

// Samples oracle outputs at lambda = 0 and lambda = 2*tau*1 and reports
// metadata inconsistencies (value > V, contribution > C_inf, total
// contribution > C_1, infeasible best responses) plus structural problems.
// Findings are data, not errors.
std::vector<Finding> validate(const SeparableProgram& program);

}  // namespace privdude

#endif  // PRIVDUDE_MODEL_HPP
