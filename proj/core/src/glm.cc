// Copyright 2026 The hrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrank/glm.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace hrank {

LinkKind parse_link(std::string_view name) {
  if (name == "uniform") return LinkKind::kUniform;
  if (name == "bradley-terry") return LinkKind::kBradleyTerry;
  if (name == "thurstone-mosteller") return LinkKind::kThurstoneMosteller;
  if (name == "angular") return LinkKind::kAngular;
  throw std::invalid_argument("unknown link function '" + std::string(name) +
                              "'");
}

std::string_view link_name(LinkKind link) {
  switch (link) {
    case LinkKind::kUniform:
      return "uniform";
    case LinkKind::kBradleyTerry:
      return "bradley-terry";
    case LinkKind::kThurstoneMosteller:
      return "thurstone-mosteller";
    case LinkKind::kAngular:
      return "angular";
  }
  throw std::invalid_argument("unknown link kind");
}

double preference_prob(LinkKind link, double delta) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  switch (link) {
    case LinkKind::kUniform:
      return (std::clamp(delta, -1.0, 1.0) + 1.0) / 2.0;
    case LinkKind::kBradleyTerry:
      // Split by sign so exp never overflows.
      if (delta >= 0) return 1.0 / (1.0 + std::exp(-delta));
      return std::exp(delta) / (1.0 + std::exp(delta));
    case LinkKind::kThurstoneMosteller:
      return 0.5 * std::erfc(-delta / std::numbers::sqrt2);
    case LinkKind::kAngular:
      return (std::sin(std::clamp(delta, -kHalfPi, kHalfPi)) + 1.0) / 2.0;
  }
  throw std::invalid_argument("unknown link kind");
}

double inverse_link(LinkKind link, double pi_hat) {
  if (!(pi_hat >= 0.0 && pi_hat <= 1.0)) {
    throw std::domain_error("inverse_link: probability outside [0, 1]");
  }
  switch (link) {
    case LinkKind::kUniform:
      return 2.0 * pi_hat - 1.0;
    case LinkKind::kAngular:
      return std::asin(2.0 * pi_hat - 1.0);
    case LinkKind::kBradleyTerry:
    case LinkKind::kThurstoneMosteller:
      if (pi_hat == 0.0 || pi_hat == 1.0) {
        throw SaturatedProbability(
            "inverse_link: probability 0 or 1 has no finite preimage; clip "
            "it first");
      }
      if (link == LinkKind::kBradleyTerry) {
        return std::log(pi_hat) - std::log1p(-pi_hat);
      }
      return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * pi_hat);
  }
  throw std::invalid_argument("unknown link kind");
}

double clip_empirical_probability(double pi_hat, int count) {
  if (count <= 0) {
    throw std::invalid_argument("clip_empirical_probability: count must be > 0");
  }
  const double margin = 1.0 / (2.0 * count);
  return std::clamp(pi_hat, margin, 1.0 - margin);
}

int sample_label(LinkKind link, const ScoreVector& x_star, ItemIndex i,
                 ItemIndex j, Rng& rng) {
  const double p = preference_prob(link, x_star[i] - x_star[j]);
  return rng.uniform() < p ? 1 : -1;
}

ScoreVector generate_ground_truth(int n, Rng& rng) {
  ScoreVector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform();
  return x;
}

}  // namespace hrank
