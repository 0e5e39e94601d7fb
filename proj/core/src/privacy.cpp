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

#include "privdude/privacy.hpp"

#include <cmath>

#include "privdude/errors.hpp"

namespace privdude {

PerRoundBudget per_round_budget(double epsilon, double delta, long rounds) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw ParameterError("delta must lie in (0, 1/2)");
  }
  if (rounds < 1) throw ParameterError("rounds must be >= 1");

  const double t = static_cast<double>(rounds);
  const double comp = std::sqrt(8.0 * t * std::log(2.0 / delta));
  PerRoundBudget out;
  out.epsilon_prime = epsilon / comp;
  out.delta_prime = delta / (2.0 * t);
  // Rounding can push the recomposed budget one ulp past the total; nudge
  // down until the ledger identities hold exactly.
  while (out.epsilon_prime * comp > epsilon) {
    out.epsilon_prime = std::nextafter(out.epsilon_prime, 0.0);
  }
  while (2.0 * t * out.delta_prime > delta) {
    out.delta_prime = std::nextafter(out.delta_prime, 0.0);
  }
  return out;
}

double gaussian_sigma(double l2_sensitivity, double epsilon_prime,
                      double delta_prime) {
  if (l2_sensitivity < 0.0) throw ParameterError("sensitivity must be >= 0");
  if (!(epsilon_prime > 0.0)) throw ParameterError("epsilon' must be > 0");
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw ParameterError("delta' must lie in (0, 1)");
  }
  if (l2_sensitivity == 0.0) return 0.0;
  return std::sqrt(2.0 * std::log(1.25 / delta_prime)) * l2_sensitivity /
         epsilon_prime;
}

double sample_gaussian(double std, RngStream& stream) {
  if (std < 0.0) throw ParameterError("gaussian std must be >= 0");
  if (std == 0.0) return 0.0;
  // Box-Muller, cosine branch. next_unit() never returns 0 or 1.
  const double u1 = stream.next_unit();
  const double u2 = stream.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return std * r * std::cos(2.0 * 3.141592653589793 * u2);
}

double sample_laplace(double scale, RngStream& stream) {
  if (scale < 0.0) throw ParameterError("laplace scale must be >= 0");
  if (scale == 0.0) return 0.0;
  const double u = stream.next_unit() - 0.5;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

double sv_accuracy_bound(double epsilon, long k_queries, double beta) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (k_queries < 1) throw ParameterError("query count must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("beta must lie in (0, 1)");
  }
  return 8.0 *
         (std::log(static_cast<double>(k_queries)) + std::log(2.0 / beta)) /
         epsilon;
}

bool BudgetLedger::within_budget() const {
  if (rounds_ < 1) return false;
  const double t = static_cast<double>(rounds_);
  const double comp = std::sqrt(8.0 * t * std::log(2.0 / total_delta_));
  return per_round_.epsilon_prime * comp <= total_epsilon_ &&
         2.0 * t * per_round_.delta_prime <= total_delta_;
}

SparseVector::SparseVector(double epsilon, double threshold, RngStream stream,
                           bool noise_disabled)
    : epsilon_(epsilon),
      threshold_(threshold),
      noisy_threshold_(threshold),
      noise_disabled_(noise_disabled),
      stream_(stream) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!noise_disabled_) {
    noisy_threshold_ = threshold_ + sample_laplace(2.0 / epsilon_, stream_);
  }
}

SparseVector::Answer SparseVector::query(double q) {
  if (halted_) {
    throw StateError("sparse vector queried after halt");
  }
  double y = q;
  if (!noise_disabled_) {
    y += sample_laplace(4.0 / epsilon_, stream_);
  }
  if (y >= noisy_threshold_) {
    halted_ = true;
    return Answer::kAbove;
  }
  return Answer::kBelow;
}

}  // namespace privdude
