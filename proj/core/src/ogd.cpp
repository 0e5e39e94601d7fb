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

#include "privdude/ogd.hpp"

#include <algorithm>
#include <cmath>

#include "privdude/errors.hpp"
#include "privdude/privacy.hpp"

namespace privdude {

std::vector<double> project_box(std::span<const double> lambda,
                                double box_hi) {
  std::vector<double> out(lambda.begin(), lambda.end());
  for (double& v : out) v = std::clamp(v, 0.0, box_hi);
  return out;
}

std::vector<double> step(std::span<const double> lambda,
                         std::span<const double> noisy_loss,
                         const OgdConfig& config) {
  if (lambda.size() != noisy_loss.size()) {
    throw DimensionError("lambda and loss must have equal length");
  }
  std::vector<double> moved(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    moved[j] = lambda[j] + config.eta * noisy_loss[j];
  }
  return project_box(moved, config.box_hi);
}

double empirical_regret(const OgdHistory& history) {
  const std::size_t rounds = history.losses.size();
  if (rounds == 0 || history.iterates.size() != rounds) {
    throw ParameterError("empirical_regret needs a nonempty, aligned history");
  }
  const std::size_t k = history.losses.front().size();
  double played = 0.0;
  std::vector<double> summed(k, 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto& lambda = history.iterates[t];
    const auto& loss = history.losses[t];
    if (lambda.size() != k || loss.size() != k) {
      throw DimensionError("history rows must all have length k");
    }
    for (std::size_t j = 0; j < k; ++j) {
      played += lambda[j] * loss[j];
      summed[j] += loss[j];
    }
  }
  // Best fixed point in the box, coordinatewise: box_hi where the summed
  // loss is negative, 0 otherwise.
  double best = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    best += history.box_hi * std::min(0.0, summed[j]);
  }
  const double t = static_cast<double>(rounds);
  return played / t - best / t;
}

double regret_bound(const OgdConfig& config, double noise_std, double beta) {
  if (config.k == 0 || config.horizon < 1) {
    throw ParameterError("regret_bound needs k >= 1 and horizon >= 1");
  }
  if (noise_std < 0.0 || !(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("regret_bound needs noise_std >= 0, beta in (0,1)");
  }
  const double k = static_cast<double>(config.k);
  const double t = static_cast<double>(config.horizon);
  const double diameter = config.box_hi * std::sqrt(k);
  double noise_term = 0.0;
  if (noise_std > 0.0) {
    noise_term = 2.0 * noise_std *
                 std::sqrt(std::log(2.0 * t * k / beta) / gaussian_tail_a());
  }
  return diameter * std::sqrt(k) / std::sqrt(t) *
         (config.loss_bound + noise_term);
}

}  // namespace privdude
