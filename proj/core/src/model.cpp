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

#include "privdude/model.hpp"

#include <algorithm>
#include <cmath>

#include "privdude/errors.hpp"

namespace privdude {

BestResponse AgentOracle::null_action() const {
  if (!has_null_action()) {
    throw StateError("oracle has no null action");
  }
  BestResponse r;
  r.point.assign(point_dimension(), 0.0);
  r.value = 0.0;
  r.contributions.assign(constraint_count(), 0.0);
  return r;
}

SeparableProgram::SeparableProgram(
    std::vector<std::shared_ptr<const AgentOracle>> agents,
    std::shared_ptr<const AgentOracle> agent0, std::vector<double> b,
    ProgramMetadata metadata)
    : agents_(std::move(agents)),
      agent0_(std::move(agent0)),
      b_(std::move(b)),
      metadata_(metadata) {
  if (b_.empty()) {
    throw ParameterError("a separable program needs k >= 1 constraints");
  }
}

const AgentOracle& SeparableProgram::oracle(std::size_t slot) const {
  if (agent0_) {
    if (slot == 0) return *agent0_;
    return *agents_.at(slot - 1);
  }
  return *agents_.at(slot);
}

std::size_t SeparableProgram::agent_id(std::size_t slot) const {
  if (agent0_) return slot;  // slot 0 is agent 0
  return slot + 1;
}

bool SeparableProgram::all_have_null_action() const {
  for (std::size_t s = 0; s < oracle_count(); ++s) {
    if (!oracle(s).has_null_action()) return false;
  }
  return true;
}

SeparableProgram SeparableProgram::with_scalars(std::vector<double> b) const {
  if (b.size() != b_.size()) {
    throw DimensionError("replacement scalars must keep length k");
  }
  return SeparableProgram(agents_, agent0_, std::move(b), metadata_);
}

std::vector<double> evaluate_coupling(const SeparableProgram& program,
                                      const PrimalPoint& point) {
  const std::size_t k = program.k();
  if (point.parts.size() != program.oracle_count()) {
    throw DimensionError("point has " + std::to_string(point.parts.size()) +
                         " parts, program has " +
                         std::to_string(program.oracle_count()) + " oracles");
  }
  std::vector<double> l(k, 0.0);
  for (std::size_t s = 0; s < point.parts.size(); ++s) {
    const auto& c = point.parts[s].contributions;
    if (c.size() != k) {
      throw DimensionError(
          "agent " + std::to_string(program.agent_id(s)) + " contributes " +
          std::to_string(c.size()) + " coordinates, expected k = " +
          std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) l[j] += c[j];
  }
  for (std::size_t j = 0; j < k; ++j) l[j] -= program.b()[j];
  return l;
}

double total_violation(const SeparableProgram& program,
                       const PrimalPoint& point) {
  const std::vector<double> l = evaluate_coupling(program, point);
  double v = 0.0;
  for (double lj : l) v += std::max(0.0, lj);
  return v;
}

double objective(const SeparableProgram& program, const PrimalPoint& point) {
  if (point.parts.size() != program.oracle_count()) {
    throw DimensionError("point/program agent count mismatch");
  }
  double total = 0.0;
  for (const auto& part : point.parts) total += part.value;
  return total;
}

namespace {

void check_sample(const SeparableProgram& program, std::size_t slot,
                  std::span<const double> lambda, const char* where,
                  std::vector<Finding>& findings) {
  const auto& meta = program.metadata();
  const AgentOracle& oracle = program.oracle(slot);
  const long id = static_cast<long>(program.agent_id(slot));
  const BestResponse r = oracle.best_response(lambda);
  if (r.contributions.size() != program.k()) {
    findings.push_back({id, std::string("contribution length mismatch at ") +
                                where});
    return;
  }
  if (!oracle.is_feasible(r.point)) {
    findings.push_back(
        {id, std::string("best response infeasible at ") + where});
  }
  if (r.value > meta.V + 1e-9) {
    findings.push_back({id, std::string("value ") + std::to_string(r.value) +
                                " exceeds V at " + where});
  }
  double total_contribution = 0.0;
  for (std::size_t j = 0; j < r.contributions.size(); ++j) {
    if (r.contributions[j] > meta.C_inf + 1e-9) {
      findings.push_back({id, "contribution to constraint " +
                                  std::to_string(j) + " exceeds C_inf at " +
                                  where});
    }
    total_contribution += r.contributions[j];
  }
  if (total_contribution > meta.C_1 + 1e-9) {
    findings.push_back(
        {id, std::string("total contribution exceeds C_1 at ") + where});
  }
}

}  // namespace

std::vector<Finding> validate(const SeparableProgram& program) {
  std::vector<Finding> findings;
  const std::size_t k = program.k();
  if (program.b().size() != k || k == 0) {
    findings.push_back({-1, "constraint scalar vector length != k"});
    return findings;
  }
  for (std::size_t s = 0; s < program.oracle_count(); ++s) {
    if (program.oracle(s).constraint_count() != k) {
      findings.push_back({static_cast<long>(program.agent_id(s)),
                          "oracle constraint count != k"});
    }
  }
  if (!findings.empty()) return findings;

  const std::vector<double> zero(k, 0.0);
  const std::vector<double> top(k, 2.0 * program.metadata().tau);
  for (std::size_t s = 0; s < program.oracle_count(); ++s) {
    check_sample(program, s, zero, "lambda=0", findings);
    check_sample(program, s, top, "lambda=2*tau", findings);
  }
  return findings;
}

}  // namespace privdude
