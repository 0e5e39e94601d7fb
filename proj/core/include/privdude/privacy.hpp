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

#ifndef PRIVDUDE_PRIVACY_HPP
#define PRIVDUDE_PRIVACY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "privdude/rng.hpp"

namespace privdude {

// Gaussian tail constant a = ln(2) / (2*pi), so that
// Pr[|N(0, s^2)| > t] <= 2 exp(-a t^2 / s^2).
inline constexpr double gaussian_tail_a() {
  return 0.6931471805599453 / (2.0 * 3.141592653589793);
}

struct PerRoundBudget {
  double epsilon_prime = 0.0;
  double delta_prime = 0.0;
};

// Splits a total (epsilon, delta) budget over T adaptive rounds:
// epsilon' = epsilon / sqrt(8 T ln(2/delta)), delta' = delta / (2T).
// Composing T rounds of (epsilon', delta') plus the delta/2 composition slack
// lands exactly back inside (epsilon, delta); the outputs are nudged down by
// ulps if needed so the ledger identities hold in floating point.
// Requires epsilon > 0, delta in (0, 1/2), T >= 1.
PerRoundBudget per_round_budget(double epsilon, double delta, long rounds);

// Minimal Gaussian standard deviation for an (epsilon', delta')-private
// release of an l2-sensitivity-bounded vector:
// sqrt(2 ln(1.25/delta')) * sensitivity / epsilon'.
double gaussian_sigma(double l2_sensitivity, double epsilon_prime,
                      double delta_prime);

// One N(0, std^2) draw. std = 0 returns exactly 0 without consuming the
// stream. Throws ParameterError for negative std.
double sample_gaussian(double std, RngStream& stream);

// One Laplace(scale) draw (density exp(-|x|/scale)/(2 scale)). scale = 0
// returns exactly 0 without consuming the stream.
double sample_laplace(double scale, RngStream& stream);

// High-probability accuracy width of the sparse vector mechanism over
// k_queries queries: 8 (ln k + ln(2/beta)) / epsilon.
// Requires epsilon > 0, k_queries >= 1, beta in (0, 1).
double sv_accuracy_bound(double epsilon, long k_queries, double beta);

struct LedgerEntry {
  std::string label;
  double epsilon = 0.0;  // per-invocation share
  double delta = 0.0;
  long count = 1;
};

// Append-only record of how a run spends its privacy budget.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(double total_epsilon, double total_delta, long rounds,
               PerRoundBudget per_round)
      : total_epsilon_(total_epsilon),
        total_delta_(total_delta),
        rounds_(rounds),
        per_round_(per_round) {}

  void add(LedgerEntry entry) { entries_.push_back(std::move(entry)); }

  double total_epsilon() const { return total_epsilon_; }
  double total_delta() const { return total_delta_; }
  long rounds() const { return rounds_; }
  const PerRoundBudget& per_round() const { return per_round_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }

  // Composition identities: sqrt(8 T ln(2/delta)) * epsilon' <= epsilon and
  // 2 T delta' <= delta, both in exact floating-point comparison.
  bool within_budget() const;

 private:
  double total_epsilon_ = 0.0;
  double total_delta_ = 0.0;
  long rounds_ = 0;
  PerRoundBudget per_round_;
  std::vector<LedgerEntry> entries_;
};

// Above-threshold detector (the sparse vector mechanism). The noisy
// threshold is drawn exactly once at construction; after the first Above
// answer the mechanism halts and further queries are state errors.
class SparseVector {
 public:
  enum class Answer { kBelow, kAbove };

  SparseVector(double epsilon, double threshold, RngStream stream,
               bool noise_disabled = false);

  Answer query(double q);

  bool halted() const { return halted_; }
  double threshold() const { return threshold_; }
  double noisy_threshold() const { return noisy_threshold_; }
  double epsilon() const { return epsilon_; }
  bool noise_disabled() const { return noise_disabled_; }

 private:
  double epsilon_;
  double threshold_;
  double noisy_threshold_;
  bool halted_ = false;
  bool noise_disabled_;
  RngStream stream_;
};

}  // namespace privdude

#endif  // PRIVDUDE_PRIVACY_HPP
