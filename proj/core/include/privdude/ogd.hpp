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

#ifndef PRIVDUDE_OGD_HPP
#define PRIVDUDE_OGD_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace privdude {

// Projected online gradient descent over the box [0, box_hi]^k.
struct OgdConfig {
  double eta = 0.0;       // step size
  double box_hi = 0.0;    // per-coordinate cap (2*tau in the solver)
  std::size_t k = 0;      // dimension
  double loss_bound = 0.0;  // per-coordinate magnitude bound X on true losses
  long horizon = 0;       // T
};

// Coordinatewise clamp to [0, box_hi]. Idempotent.
std::vector<double> project_box(std::span<const double> lambda, double box_hi);

// lambda' = project_box(lambda + eta * noisy_loss). The caller passes the
// ascent direction; a learner minimizing <lambda, m> passes -m.
std::vector<double> step(std::span<const double> lambda,
                         std::span<const double> noisy_loss,
                         const OgdConfig& config);

// Recorded play. Losses are stored in the minimization convention: the
// learner's regret is measured on <lambda, loss> and its update direction
// was the negated noisy loss. All iterates lie in [0, box_hi]^k.
struct OgdHistory {
  double box_hi = 0.0;
  std::vector<std::vector<double>> iterates;
  std::vector<std::vector<double>> losses;        // true losses
  std::vector<std::vector<double>> noisy_losses;  // what the learner saw
};

// Average regret against the best fixed point in the box, on true losses:
//   (1/T) sum_t <lambda_t, loss_t>  -  min_{lambda in box} (1/T) sum_t
//   <lambda, loss_t>.
// The inner minimum is solved coordinatewise: 0 or box_hi per the sign of
// the summed loss coordinate. Throws on an empty history.
double empirical_regret(const OgdHistory& history);

// High-probability regret bound for noisy projected gradient descent with
// per-coordinate Gaussian noise of std noise_std:
//   (|P| sqrt(k) / sqrt(T)) * (X + 2 noise_std sqrt((1/a) ln(2 T k / beta)))
// where |P| = box_hi * sqrt(k) is the l2 diameter of the box and a is the
// Gaussian tail constant.
double regret_bound(const OgdConfig& config, double noise_std, double beta);

}  // namespace privdude

#endif  // PRIVDUDE_OGD_HPP
