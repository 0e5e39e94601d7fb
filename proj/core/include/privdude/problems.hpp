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

#ifndef PRIVDUDE_PROBLEMS_HPP
#define PRIVDUDE_PROBLEMS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "privdude/model.hpp"

namespace privdude {

// Multi-dimensional knapsack: one item per agent, k resource constraints.
// Class constants: sigma = sqrt(k), tau = max v_i / w_ij over positive
// weights, width = n, V = 1, C_inf = 1, C_1 = k, L = min positive w_ij.
struct KnapsackInstance {
  std::vector<double> values;                // n, in [0, 1]
  std::vector<std::vector<double>> weights;  // n x k, in [0, 1]
  std::vector<double> capacities;            // k, positive (the scalars b)

  std::size_t n() const { return values.size(); }
  std::size_t k() const { return capacities.size(); }
  ProgramMetadata metadata() const;
  SeparableProgram to_program() const;
};

// Item-level best response: take the item iff its margin is strictly
// positive; ties go to the null action.
int knapsack_best_response(double value, std::span<const double> weights,
                           std::span<const double> lambda);

// d-demand allocation: k goods with supplies, agents value bundles of size
// at most d via explicit tables. Bundles are enumerated in lexicographic
// order with the empty bundle first.
struct DDemandInstance {
  std::size_t goods = 0;       // k
  std::size_t bundle_cap = 0;  // d
  std::vector<double> supplies;
  // bundle_values[i][s] aligned with bundles(); entry 0 (empty bundle) is 0.
  std::vector<std::vector<double>> bundle_values;

  std::size_t n() const { return bundle_values.size(); }
  // All subsets of [goods] with size <= bundle_cap, lexicographic, empty
  // first. Throws ScaleError beyond 10^6 bundles.
  std::vector<std::vector<std::size_t>> bundles() const;
  ProgramMetadata metadata() const;
  SeparableProgram to_program() const;
};

// Unit multi-commodity flow on a shared directed graph; each agent routes
// one unit from its source to its sink. Min-cost objectives are negated into
// the maximization frame at construction. No null action.
struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
};

struct FlowInstance {
  std::size_t nodes = 0;
  std::vector<FlowEdge> edges;     // lexicographic identity = index order
  std::vector<double> capacities;  // per edge (the scalars b)
  std::vector<std::size_t> sources;  // per agent
  std::vector<std::size_t> sinks;    // per agent
  std::vector<std::vector<double>> edge_costs;  // n x m, in [0, 1]
  std::size_t path_length_bound = 0;            // L

  std::size_t n() const { return sources.size(); }
  std::size_t m() const { return edges.size(); }
  ProgramMetadata metadata() const;
  SeparableProgram to_program() const;
};

// Electricity scheduling: intervals x slots grid, per-interval demand floors
// and a total consumption cap per agent, capacitated slots.
struct ScheduleInstance {
  std::size_t intervals = 0;  // T
  std::size_t slots = 0;      // Q
  std::vector<double> slot_caps;                 // T*Q row-major (b)
  std::vector<std::vector<double>> slot_values;  // n x T*Q, in [0, 1]
  std::vector<std::vector<double>> demands;      // n x T (d_t >= 0)
  double total_cap = 0.0;                        // d_max (class level)

  std::size_t n() const { return slot_values.size(); }
  std::size_t grid() const { return intervals * slots; }
  ProgramMetadata metadata() const;
  SeparableProgram to_program() const;
};

// Allocation with shared resources: agents enroll in at most one project,
// agent 0 buys resource quantities y_r in [0, n]. One coupling constraint
// per (project, resource in R_j) pair, all with scalar 0.
struct SharedResourceInstance {
  std::size_t projects = 0;   // m
  std::size_t resources = 0;
  std::size_t max_project_resources = 0;  // d
  std::vector<double> resource_costs;     // in [0, 1]
  std::vector<std::vector<std::size_t>> project_resources;  // R_j, |R_j| <= d
  std::vector<std::vector<double>> project_values;          // n x m, in [0,1]

  std::size_t n() const { return project_values.size(); }
  std::size_t coupling_count() const;
  ProgramMetadata metadata() const;
  SeparableProgram to_program() const;
};

// Agent 0's closed-form best response: y_r = n if the summed prices on
// constraints involving r strictly exceed the unit cost c_r, else 0.
std::vector<double> shared_agent0_best_response(
    const SharedResourceInstance& instance, std::span<const double> lambda);

enum class ProblemKind {
  kKnapsack,
  kDDemand,
  kFlow,
  kSchedule,
  kSharedResource,
};

std::string kind_name(ProblemKind kind);
ProblemKind kind_from_name(const std::string& name);

using Instance =
    std::variant<KnapsackInstance, DDemandInstance, FlowInstance,
                 ScheduleInstance, SharedResourceInstance>;

ProblemKind kind_of(const Instance& instance);
SeparableProgram to_program(const Instance& instance);

struct GenerateParams {
  std::size_t n = 3;  // agents
  std::size_t k = 1;  // constraints / goods / resources
  std::size_t d = 1;  // bundle cap, resources per project, or d_max
  std::size_t m = 4;  // edges (flow) or projects (shared resources)
  std::size_t intervals = 2;  // schedule grid
  std::size_t slots = 2;
};

// Seeded pseudo-random instance with metadata per the class invariants.
// Deterministic for a fixed (kind, params, seed).
Instance generate(ProblemKind kind, const GenerateParams& params,
                  std::uint64_t seed);

}  // namespace privdude

#endif  // PRIVDUDE_PROBLEMS_HPP
