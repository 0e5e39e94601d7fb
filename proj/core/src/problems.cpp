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

#include "privdude/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "privdude/errors.hpp"
#include "privdude/rng.hpp"

namespace privdude {

namespace {

constexpr std::size_t kMaxBundles = 1000000;
constexpr std::size_t kMaxPaths = 100000;
constexpr std::size_t kMaxVertices = 1 << 20;

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

// ---------------------------------------------------------------------------
// Knapsack

class KnapsackItemOracle final : public AgentOracle {
 public:
  KnapsackItemOracle(double value, std::vector<double> weights)
      : value_(value), weights_(std::move(weights)) {}

  BestResponse best_response(std::span<const double> lambda) const override {
    if (lambda.size() != weights_.size()) {
      throw DimensionError("knapsack oracle: lambda length != k");
    }
    double priced = value_;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      priced -= lambda[j] * weights_[j];
    }
    return make(priced > 0.0 ? 1.0 : 0.0);
  }

  std::vector<BestResponse> vertex_enumeration() const override {
    return {make(0.0), make(1.0)};
  }

  bool is_feasible(std::span<const double> point) const override {
    return point.size() == 1 && point[0] >= 0.0 && point[0] <= 1.0;
  }

  std::size_t point_dimension() const override { return 1; }
  std::size_t constraint_count() const override { return weights_.size(); }

 private:
  BestResponse make(double x) const {
    BestResponse r;
    r.point = {x};
    r.value = value_ * x;
    r.contributions.resize(weights_.size());
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      r.contributions[j] = weights_[j] * x;
    }
    return r;
  }

  double value_;
  std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// d-demand allocation

void enumerate_bundles(std::size_t goods, std::size_t cap,
                       std::vector<std::size_t>& prefix,
                       std::vector<std::vector<std::size_t>>& out) {
  if (out.size() > kMaxBundles) {
    throw ScaleError("d-demand bundle table exceeds the 10^6 cap");
  }
  out.push_back(prefix);
  if (prefix.size() == cap) return;
  const std::size_t start = prefix.empty() ? 0 : prefix.back() + 1;
  for (std::size_t g = start; g < goods; ++g) {
    prefix.push_back(g);
    enumerate_bundles(goods, cap, prefix, out);
    prefix.pop_back();
  }
}

class DDemandOracle final : public AgentOracle {
 public:
  DDemandOracle(std::shared_ptr<const std::vector<std::vector<std::size_t>>>
                    bundles,
                std::vector<double> values, std::size_t goods)
      : bundles_(std::move(bundles)), values_(std::move(values)),
        goods_(goods) {
    if (values_.size() != bundles_->size()) {
      throw DimensionError("d-demand oracle: value table size != bundles");
    }
  }

  BestResponse best_response(std::span<const double> lambda) const override {
    if (lambda.size() != goods_) {
      throw DimensionError("d-demand oracle: lambda length != goods");
    }
    // Bundles are in lexicographic order with the empty bundle first, so
    // keeping the first maximizer implements the documented tie rule.
    std::size_t best = 0;
    double best_margin = 0.0;  // empty bundle
    for (std::size_t s = 1; s < bundles_->size(); ++s) {
      double margin = values_[s];
      for (std::size_t g : (*bundles_)[s]) margin -= lambda[g];
      if (margin > best_margin) {
        best_margin = margin;
        best = s;
      }
    }
    return make(best);
  }

  std::vector<BestResponse> vertex_enumeration() const override {
    std::vector<BestResponse> out;
    out.reserve(bundles_->size());
    for (std::size_t s = 0; s < bundles_->size(); ++s) out.push_back(make(s));
    return out;
  }

  bool is_feasible(std::span<const double> point) const override {
    if (point.size() != bundles_->size()) return false;
    double total = 0.0;
    for (double x : point) {
      if (x < -1e-12) return false;
      total += x;
    }
    return total <= 1.0 + 1e-9;
  }

  std::size_t point_dimension() const override { return bundles_->size(); }
  std::size_t constraint_count() const override { return goods_; }

 private:
  BestResponse make(std::size_t bundle) const {
    BestResponse r;
    r.point.assign(bundles_->size(), 0.0);
    r.point[bundle] = 1.0;
    r.value = values_[bundle];
    r.contributions.assign(goods_, 0.0);
    for (std::size_t g : (*bundles_)[bundle]) r.contributions[g] = 1.0;
    return r;
  }

  std::shared_ptr<const std::vector<std::vector<std::size_t>>> bundles_;
  std::vector<double> values_;
  std::size_t goods_;
};

// ---------------------------------------------------------------------------
// Multi-commodity flow

struct PathSet {
  std::vector<std::vector<std::size_t>> paths;  // edge index sequences
};

void enumerate_paths(const FlowInstance& inst, std::size_t node,
                     std::size_t sink, std::size_t max_len,
                     std::vector<std::size_t>& prefix,
                     std::vector<bool>& visited, PathSet& out) {
  if (node == sink) {
    if (out.paths.size() >= kMaxPaths) {
      throw ScaleError("flow path enumeration exceeds the cap");
    }
    out.paths.push_back(prefix);
    return;
  }
  if (prefix.size() == max_len) return;
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    if (inst.edges[e].from != node) continue;
    const std::size_t next = inst.edges[e].to;
    if (visited[next]) continue;
    visited[next] = true;
    prefix.push_back(e);
    enumerate_paths(inst, next, sink, max_len, prefix, visited, out);
    prefix.pop_back();
    visited[next] = false;
  }
}

class FlowAgentOracle final : public AgentOracle {
 public:
  FlowAgentOracle(const FlowInstance& inst, std::size_t agent)
      : m_(inst.m()), costs_(inst.edge_costs.at(agent)) {
    PathSet ps;
    std::vector<std::size_t> prefix;
    std::vector<bool> visited(inst.nodes, false);
    visited[inst.sources[agent]] = true;
    enumerate_paths(inst, inst.sources[agent], inst.sinks[agent],
                    inst.path_length_bound, prefix, visited, ps);
    paths_ = std::move(ps.paths);
    if (paths_.empty()) {
      throw PreconditionError("flow agent " + std::to_string(agent + 1) +
                              " has no source-to-sink path");
    }
  }

  BestResponse best_response(std::span<const double> lambda) const override {
    if (lambda.size() != m_) {
      throw DimensionError("flow oracle: lambda length != edge count");
    }
    // Paths are enumerated in lexicographic edge order; strict improvement
    // keeps the lexicographically smallest minimizer.
    std::size_t best = 0;
    double best_cost = priced_cost(paths_[0], lambda);
    for (std::size_t p = 1; p < paths_.size(); ++p) {
      const double cost = priced_cost(paths_[p], lambda);
      if (cost < best_cost) {
        best_cost = cost;
        best = p;
      }
    }
    return make(paths_[best]);
  }

  bool has_null_action() const override { return false; }

  std::vector<BestResponse> vertex_enumeration() const override {
    std::vector<BestResponse> out;
    out.reserve(paths_.size());
    for (const auto& path : paths_) out.push_back(make(path));
    return out;
  }

  bool is_feasible(std::span<const double> point) const override {
    // Any unit (source, sink)-flow is feasible; vertices are simple paths.
    if (point.size() != m_) return false;
    for (double x : point) {
      if (x < -1e-12 || x > 1.0 + 1e-12) return false;
    }
    return true;
  }

  std::size_t point_dimension() const override { return m_; }
  std::size_t constraint_count() const override { return m_; }

 private:
  double priced_cost(const std::vector<std::size_t>& path,
                     std::span<const double> lambda) const {
    double cost = 0.0;
    for (std::size_t e : path) cost += costs_[e] + lambda[e];
    return cost;
  }

  BestResponse make(const std::vector<std::size_t>& path) const {
    BestResponse r;
    r.point.assign(m_, 0.0);
    r.contributions.assign(m_, 0.0);
    double cost = 0.0;
    for (std::size_t e : path) {
      r.point[e] = 1.0;
      r.contributions[e] = 1.0;
      cost += costs_[e];
    }
    r.value = -cost;  // min-cost negated into the maximization frame
    return r;
  }

  std::size_t m_;
  std::vector<double> costs_;
  std::vector<std::vector<std::size_t>> paths_;
};

// ---------------------------------------------------------------------------
// Electricity scheduling

class ScheduleAgentOracle final : public AgentOracle {
 public:
  ScheduleAgentOracle(const ScheduleInstance& inst, std::size_t agent)
      : intervals_(inst.intervals), slots_(inst.slots),
        values_(inst.slot_values.at(agent)), demands_(inst.demands.at(agent)),
        total_cap_(inst.total_cap) {
    double demand_sum = 0.0;
    for (std::size_t t = 0; t < intervals_; ++t) {
      if (demands_[t] > static_cast<double>(slots_) + 1e-12) {
        throw PreconditionError("schedule agent " + std::to_string(agent + 1) +
                                ": interval demand exceeds slot count");
      }
      demand_sum += demands_[t];
    }
    if (demand_sum > total_cap_ + 1e-12) {
      throw PreconditionError("schedule agent " + std::to_string(agent + 1) +
                              ": demands exceed the total cap");
    }
  }

  // The zero assignment is only feasible when every demand floor is zero;
  // otherwise the agent cannot opt out and the pricing mechanisms must
  // refuse the instance.
  bool has_null_action() const override {
    for (double d : demands_) {
      if (d > 0.0) return false;
    }
    return true;
  }

  BestResponse best_response(std::span<const double> lambda) const override {
    const std::size_t grid = intervals_ * slots_;
    if (lambda.size() != grid) {
      throw DimensionError("schedule oracle: lambda length != grid size");
    }
    std::vector<double> x(grid, 0.0);
    // Mandatory phase: meet each interval's demand on its best-margin
    // slots, fractional last slot.
    for (std::size_t t = 0; t < intervals_; ++t) {
      double need = demands_[t];
      if (need <= 0.0) continue;
      std::vector<std::size_t> order(slots_);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return margin(t, a, lambda) > margin(t, b, lambda);
                       });
      for (std::size_t q : order) {
        if (need <= 0.0) break;
        const double take = std::min(1.0, need);
        x[t * slots_ + q] = take;
        need -= take;
      }
    }
    // Optional phase: spend remaining budget on globally best positive
    // margins.
    double demand_sum = 0.0;
    for (double d : demands_) demand_sum += d;
    double budget = total_cap_ - demand_sum;
    if (budget > 0.0) {
      std::vector<std::size_t> order(grid);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return values_[a] - lambda[a] >
                                values_[b] - lambda[b];
                       });
      for (std::size_t cell : order) {
        if (budget <= 0.0) break;
        if (values_[cell] - lambda[cell] <= 0.0) break;
        const double room = 1.0 - x[cell];
        if (room <= 0.0) continue;
        const double take = std::min(room, budget);
        x[cell] += take;
        budget -= take;
      }
    }
    return make(std::move(x));
  }

  std::vector<BestResponse> vertex_enumeration() const override {
    const std::size_t grid = intervals_ * slots_;
    for (double d : demands_) {
      if (d != std::floor(d)) {
        throw ScaleError("schedule vertex enumeration needs integer demands");
      }
    }
    if (total_cap_ != std::floor(total_cap_) || grid > 20) {
      throw ScaleError("schedule vertex enumeration limited to small grids");
    }
    std::vector<BestResponse> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << grid); ++mask) {
      std::vector<double> x(grid, 0.0);
      for (std::size_t c = 0; c < grid; ++c) {
        if (mask & (std::size_t{1} << c)) x[c] = 1.0;
      }
      if (is_feasible(x)) out.push_back(make(std::move(x)));
    }
    return out;
  }

  bool is_feasible(std::span<const double> point) const override {
    if (point.size() != intervals_ * slots_) return false;
    double total = 0.0;
    for (double v : point) {
      if (v < -1e-9 || v > 1.0 + 1e-9) return false;
      total += v;
    }
    if (total > total_cap_ + 1e-9) return false;
    for (std::size_t t = 0; t < intervals_; ++t) {
      double row = 0.0;
      for (std::size_t q = 0; q < slots_; ++q) row += point[t * slots_ + q];
      if (row < demands_[t] - 1e-9) return false;
    }
    return true;
  }

  std::size_t point_dimension() const override { return intervals_ * slots_; }
  std::size_t constraint_count() const override { return intervals_ * slots_; }

 private:
  double margin(std::size_t t, std::size_t q,
                std::span<const double> lambda) const {
    return values_[t * slots_ + q] - lambda[t * slots_ + q];
  }

  BestResponse make(std::vector<double> x) const {
    BestResponse r;
    r.value = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) r.value += values_[c] * x[c];
    r.contributions = x;
    r.point = std::move(x);
    return r;
  }

  std::size_t intervals_;
  std::size_t slots_;
  std::vector<double> values_;
  std::vector<double> demands_;
  double total_cap_;
};

// ---------------------------------------------------------------------------
// Shared resources

// Flattened coupling index layout: constraints ordered by project, then by
// the project's resource list order.
std::vector<std::size_t> coupling_offsets(
    const SharedResourceInstance& inst) {
  std::vector<std::size_t> offsets(inst.projects + 1, 0);
  for (std::size_t j = 0; j < inst.projects; ++j) {
    offsets[j + 1] = offsets[j] + inst.project_resources[j].size();
  }
  return offsets;
}

class SharedAgentOracle final : public AgentOracle {
 public:
  SharedAgentOracle(const SharedResourceInstance& inst, std::size_t agent)
      : projects_(inst.projects), offsets_(coupling_offsets(inst)),
        values_(inst.project_values.at(agent)) {}

  BestResponse best_response(std::span<const double> lambda) const override {
    if (lambda.size() != offsets_.back()) {
      throw DimensionError("shared oracle: lambda length != coupling count");
    }
    // Null action unless some project has a strictly positive margin.
    long best = -1;
    double best_margin = 0.0;
    for (std::size_t j = 0; j < projects_; ++j) {
      double margin = values_[j];
      for (std::size_t c = offsets_[j]; c < offsets_[j + 1]; ++c) {
        margin -= lambda[c];
      }
      if (margin > best_margin) {
        best_margin = margin;
        best = static_cast<long>(j);
      }
    }
    return make(best);
  }

  std::vector<BestResponse> vertex_enumeration() const override {
    std::vector<BestResponse> out;
    out.push_back(make(-1));
    for (std::size_t j = 0; j < projects_; ++j) {
      out.push_back(make(static_cast<long>(j)));
    }
    return out;
  }

  bool is_feasible(std::span<const double> point) const override {
    if (point.size() != projects_) return false;
    double total = 0.0;
    for (double v : point) {
      if (v < -1e-12) return false;
      total += v;
    }
    return total <= 1.0 + 1e-9;
  }

  std::size_t point_dimension() const override { return projects_; }
  std::size_t constraint_count() const override { return offsets_.back(); }

 private:
  BestResponse make(long project) const {
    BestResponse r;
    r.point.assign(projects_, 0.0);
    r.contributions.assign(offsets_.back(), 0.0);
    r.value = 0.0;
    if (project >= 0) {
      const auto j = static_cast<std::size_t>(project);
      r.point[j] = 1.0;
      r.value = values_[j];
      for (std::size_t c = offsets_[j]; c < offsets_[j + 1]; ++c) {
        r.contributions[c] = 1.0;
      }
    }
    return r;
  }

  std::size_t projects_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

class SharedOwnerOracle final : public AgentOracle {
 public:
  explicit SharedOwnerOracle(const SharedResourceInstance& inst)
      : resources_(inst.resources), cap_(static_cast<double>(inst.n())),
        costs_(inst.resource_costs) {
    // constraint index -> resource
    constraint_resource_.reserve(inst.coupling_count());
    for (std::size_t j = 0; j < inst.projects; ++j) {
      for (std::size_t r : inst.project_resources[j]) {
        constraint_resource_.push_back(r);
      }
    }
  }

  BestResponse best_response(std::span<const double> lambda) const override {
    if (lambda.size() != constraint_resource_.size()) {
      throw DimensionError("owner oracle: lambda length != coupling count");
    }
    // Linear in y_r with coefficient (sum of prices on r) - c_r; buy the cap
    // on a strictly positive coefficient, nothing on a tie.
    std::vector<double> price_sum(resources_, 0.0);
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      price_sum[constraint_resource_[c]] += lambda[c];
    }
    std::vector<double> y(resources_, 0.0);
    for (std::size_t r = 0; r < resources_; ++r) {
      if (price_sum[r] - costs_[r] > 0.0) y[r] = cap_;
    }
    return make(std::move(y));
  }

  std::vector<BestResponse> vertex_enumeration() const override {
    if ((std::size_t{1} << resources_) > kMaxVertices) {
      throw ScaleError("owner vertex enumeration too large");
    }
    std::vector<BestResponse> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << resources_);
         ++mask) {
      std::vector<double> y(resources_, 0.0);
      for (std::size_t r = 0; r < resources_; ++r) {
        if (mask & (std::size_t{1} << r)) y[r] = cap_;
      }
      out.push_back(make(std::move(y)));
    }
    return out;
  }

  bool is_feasible(std::span<const double> point) const override {
    if (point.size() != resources_) return false;
    for (double v : point) {
      if (v < -1e-12 || v > cap_ + 1e-9) return false;
    }
    return true;
  }

  std::size_t point_dimension() const override { return resources_; }
  std::size_t constraint_count() const override {
    return constraint_resource_.size();
  }

 private:
  BestResponse make(std::vector<double> y) const {
    BestResponse r;
    r.value = 0.0;
    for (std::size_t res = 0; res < resources_; ++res) {
      r.value -= costs_[res] * y[res];
    }
    r.contributions.assign(constraint_resource_.size(), 0.0);
    for (std::size_t c = 0; c < constraint_resource_.size(); ++c) {
      r.contributions[c] = -y[constraint_resource_[c]];
    }
    r.point = std::move(y);
    return r;
  }

  std::size_t resources_;
  double cap_;
  std::vector<double> costs_;
  std::vector<std::size_t> constraint_resource_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Free functions and instance -> program adapters

int knapsack_best_response(double value, std::span<const double> weights,
                           std::span<const double> lambda) {
  if (weights.size() != lambda.size()) {
    throw DimensionError("knapsack_best_response: length mismatch");
  }
  double priced = value;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    priced -= lambda[j] * weights[j];
  }
  return priced > 0.0 ? 1 : 0;
}

ProgramMetadata KnapsackInstance::metadata() const {
  ProgramMetadata meta;
  meta.sigma = std::sqrt(static_cast<double>(k()));
  double tau = 0.0;
  double min_weight = 0.0;
  bool seen = false;
  for (std::size_t i = 0; i < n(); ++i) {
    for (double w : weights[i]) {
      if (w > 0.0) {
        tau = std::max(tau, values[i] / w);
        min_weight = seen ? std::min(min_weight, w) : w;
        seen = true;
      }
    }
  }
  meta.tau = seen ? tau : 1.0;
  meta.width = static_cast<double>(n());
  meta.V = 1.0;
  meta.C_inf = 1.0;
  meta.C_1 = static_cast<double>(k());
  if (seen) meta.min_vertex_contribution = min_weight;
  return meta;
}

SeparableProgram KnapsackInstance::to_program() const {
  std::vector<std::shared_ptr<const AgentOracle>> oracles;
  oracles.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    if (weights[i].size() != k()) {
      throw DimensionError("knapsack item " + std::to_string(i + 1) +
                           " has wrong weight vector length");
    }
    oracles.push_back(
        std::make_shared<KnapsackItemOracle>(values[i], weights[i]));
  }
  return SeparableProgram(std::move(oracles), nullptr, capacities,
                          metadata());
}

std::vector<std::vector<std::size_t>> DDemandInstance::bundles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> prefix;
  enumerate_bundles(goods, bundle_cap, prefix, out);
  return out;
}

ProgramMetadata DDemandInstance::metadata() const {
  ProgramMetadata meta;
  const double d = static_cast<double>(bundle_cap);
  meta.sigma = std::sqrt(2.0) * d;
  meta.tau = 1.0;
  meta.width = static_cast<double>(n()) * d;
  meta.V = 1.0;
  meta.C_inf = 1.0;
  meta.C_1 = d;
  meta.min_vertex_contribution = 1.0;
  return meta;
}

SeparableProgram DDemandInstance::to_program() const {
  auto shared_bundles =
      std::make_shared<const std::vector<std::vector<std::size_t>>>(bundles());
  std::vector<std::shared_ptr<const AgentOracle>> oracles;
  oracles.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    oracles.push_back(std::make_shared<DDemandOracle>(
        shared_bundles, bundle_values[i], goods));
  }
  return SeparableProgram(std::move(oracles), nullptr, supplies, metadata());
}

ProgramMetadata FlowInstance::metadata() const {
  ProgramMetadata meta;
  meta.sigma = std::sqrt(2.0 * static_cast<double>(path_length_bound));
  meta.tau = 1.0;
  meta.width = static_cast<double>(n());
  meta.V = 0.0;  // objectives are negated costs
  meta.C_inf = 1.0;
  meta.C_1 = static_cast<double>(path_length_bound);
  return meta;
}

SeparableProgram FlowInstance::to_program() const {
  std::vector<std::shared_ptr<const AgentOracle>> oracles;
  oracles.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    oracles.push_back(std::make_shared<FlowAgentOracle>(*this, i));
  }
  return SeparableProgram(std::move(oracles), nullptr, capacities,
                          metadata());
}

ProgramMetadata ScheduleInstance::metadata() const {
  ProgramMetadata meta;
  meta.sigma = 2.0 * std::sqrt(total_cap);
  meta.tau = 1.0;
  meta.width = static_cast<double>(n()) * total_cap;
  meta.V = total_cap;
  meta.C_inf = 1.0;
  meta.C_1 = total_cap;
  return meta;
}

SeparableProgram ScheduleInstance::to_program() const {
  std::vector<std::shared_ptr<const AgentOracle>> oracles;
  oracles.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    oracles.push_back(std::make_shared<ScheduleAgentOracle>(*this, i));
  }
  return SeparableProgram(std::move(oracles), nullptr, slot_caps, metadata());
}

std::size_t SharedResourceInstance::coupling_count() const {
  std::size_t total = 0;
  for (const auto& set : project_resources) total += set.size();
  return total;
}

ProgramMetadata SharedResourceInstance::metadata() const {
  ProgramMetadata meta;
  meta.sigma = std::sqrt(2.0 * static_cast<double>(max_project_resources));
  meta.tau = 1.0;
  meta.width = static_cast<double>(n());
  meta.V = 1.0;
  meta.C_inf = 1.0;
  meta.C_1 = static_cast<double>(max_project_resources);
  return meta;
}

SeparableProgram SharedResourceInstance::to_program() const {
  std::vector<std::shared_ptr<const AgentOracle>> oracles;
  oracles.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    oracles.push_back(std::make_shared<SharedAgentOracle>(*this, i));
  }
  auto owner = std::make_shared<SharedOwnerOracle>(*this);
  return SeparableProgram(std::move(oracles), std::move(owner),
                          std::vector<double>(coupling_count(), 0.0),
                          metadata());
}

std::vector<double> shared_agent0_best_response(
    const SharedResourceInstance& instance, std::span<const double> lambda) {
  SharedOwnerOracle owner(instance);
  return owner.best_response(lambda).point;
}

// ---------------------------------------------------------------------------
// Generators

std::string kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kKnapsack: return "knapsack";
    case ProblemKind::kDDemand: return "ddemand";
    case ProblemKind::kFlow: return "flow";
    case ProblemKind::kSchedule: return "schedule";
    case ProblemKind::kSharedResource: return "shared";
  }
  throw ParameterError("unknown problem kind");
}

ProblemKind kind_from_name(const std::string& name) {
  if (name == "knapsack") return ProblemKind::kKnapsack;
  if (name == "ddemand") return ProblemKind::kDDemand;
  if (name == "flow") return ProblemKind::kFlow;
  if (name == "schedule") return ProblemKind::kSchedule;
  if (name == "shared") return ProblemKind::kSharedResource;
  throw ParameterError("unsupported problem kind: " + name);
}

ProblemKind kind_of(const Instance& instance) {
  return static_cast<ProblemKind>(instance.index());
}

SeparableProgram to_program(const Instance& instance) {
  return std::visit([](const auto& inst) { return inst.to_program(); },
                    instance);
}

namespace {

KnapsackInstance generate_knapsack(const GenerateParams& p, RngStream& rng) {
  KnapsackInstance inst;
  inst.values.resize(p.n);
  inst.weights.assign(p.n, std::vector<double>(p.k));
  for (std::size_t i = 0; i < p.n; ++i) {
    inst.values[i] = round3(0.05 + 0.95 * rng.next_unit());
    for (std::size_t j = 0; j < p.k; ++j) {
      inst.weights[i][j] = round3(0.25 + 0.75 * rng.next_unit());
    }
  }
  inst.capacities.resize(p.k);
  for (std::size_t j = 0; j < p.k; ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) column += inst.weights[i][j];
    inst.capacities[j] = round3(std::max(0.5, 0.4 * column));
  }
  return inst;
}

DDemandInstance generate_ddemand(const GenerateParams& p, RngStream& rng) {
  DDemandInstance inst;
  inst.goods = p.k;
  inst.bundle_cap = std::min(p.d, p.k);
  inst.supplies.resize(p.k);
  for (std::size_t j = 0; j < p.k; ++j) {
    inst.supplies[j] = std::max(
        1.0, std::floor(static_cast<double>(p.n) * 0.4 * rng.next_unit() +
                        1.0));
  }
  const auto bundle_list = inst.bundles();
  inst.bundle_values.assign(p.n, std::vector<double>(bundle_list.size(), 0.0));
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t s = 1; s < bundle_list.size(); ++s) {
      inst.bundle_values[i][s] = round3(rng.next_unit());
    }
  }
  return inst;
}

FlowInstance generate_flow(const GenerateParams& p, RngStream& rng) {
  // Parallel two-hop routes: source 0, middle nodes, sink last.
  FlowInstance inst;
  const std::size_t routes = std::max<std::size_t>(2, p.m / 2);
  inst.nodes = routes + 2;
  const std::size_t sink = routes + 1;
  for (std::size_t r = 0; r < routes; ++r) {
    inst.edges.push_back({0, r + 1});
    inst.edges.push_back({r + 1, sink});
  }
  inst.path_length_bound = 2;
  inst.capacities.assign(inst.edges.size(), 0.0);
  for (double& q : inst.capacities) {
    q = std::max(1.0, std::floor(0.6 * static_cast<double>(p.n)));
  }
  inst.sources.assign(p.n, 0);
  inst.sinks.assign(p.n, sink);
  inst.edge_costs.assign(p.n, std::vector<double>(inst.edges.size()));
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      inst.edge_costs[i][e] = round3(rng.next_unit());
    }
  }
  return inst;
}

ScheduleInstance generate_schedule(const GenerateParams& p, RngStream& rng) {
  ScheduleInstance inst;
  inst.intervals = p.intervals;
  inst.slots = p.slots;
  inst.slot_caps.assign(inst.grid(), 0.0);
  for (double& c : inst.slot_caps) {
    c = std::max(1.0, std::floor(0.5 * static_cast<double>(p.n)));
  }
  inst.slot_values.assign(p.n, std::vector<double>(inst.grid()));
  inst.demands.assign(p.n, std::vector<double>(p.intervals, 0.0));
  double max_demand_sum = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t c = 0; c < inst.grid(); ++c) {
      inst.slot_values[i][c] = round3(rng.next_unit());
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < p.intervals; ++t) {
      inst.demands[i][t] = rng.next_unit() < 0.6 ? 1.0 : 0.0;
      sum += inst.demands[i][t];
    }
    max_demand_sum = std::max(max_demand_sum, sum);
  }
  inst.total_cap = std::max(static_cast<double>(p.d), max_demand_sum);
  return inst;
}

SharedResourceInstance generate_shared(const GenerateParams& p,
                                       RngStream& rng) {
  SharedResourceInstance inst;
  inst.projects = p.m;
  inst.resources = p.k;
  inst.max_project_resources = std::min(p.d, p.k);
  inst.resource_costs.resize(p.k);
  for (std::size_t r = 0; r < p.k; ++r) {
    inst.resource_costs[r] = round3(0.1 + 0.8 * rng.next_unit());
  }
  inst.project_resources.assign(p.m, {});
  for (std::size_t j = 0; j < p.m; ++j) {
    std::vector<std::size_t> pool(p.k);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t pick = 0; pick < inst.max_project_resources; ++pick) {
      const std::size_t idx =
          pick + static_cast<std::size_t>(rng.next_unit() *
                                          static_cast<double>(p.k - pick));
      std::swap(pool[pick], pool[std::min(idx, p.k - 1)]);
      inst.project_resources[j].push_back(pool[pick]);
    }
    std::sort(inst.project_resources[j].begin(),
              inst.project_resources[j].end());
  }
  inst.project_values.assign(p.n, std::vector<double>(p.m));
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = 0; j < p.m; ++j) {
      inst.project_values[i][j] = round3(rng.next_unit());
    }
  }
  return inst;
}

}  // namespace

Instance generate(ProblemKind kind, const GenerateParams& params,
                  std::uint64_t seed) {
  if (params.n == 0 || params.k == 0) {
    throw ParameterError("generate needs n >= 1 and k >= 1");
  }
  RngStream rng = RngStream::derive(
      seed, {stream_tag::kGenerate, static_cast<std::uint64_t>(kind)});
  switch (kind) {
    case ProblemKind::kKnapsack: return generate_knapsack(params, rng);
    case ProblemKind::kDDemand: return generate_ddemand(params, rng);
    case ProblemKind::kFlow: return generate_flow(params, rng);
    case ProblemKind::kSchedule: return generate_schedule(params, rng);
    case ProblemKind::kSharedResource: return generate_shared(params, rng);
  }
  throw ParameterError("unknown problem kind");
}

}  // namespace privdude
