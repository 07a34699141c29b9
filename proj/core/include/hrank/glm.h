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

#ifndef HRANK_GLM_H_
#define HRANK_GLM_H_

// Generalized linear preference models: Prob{i > j} = Phi(x_i - x_j) for a
// symmetric CDF Phi.

#include <stdexcept>
#include <string>
#include <string_view>

#include "hrank/comparison_graph.h"
#include "hrank/rng.h"

namespace hrank {

enum class LinkKind {
  kUniform,             // (t + 1) / 2 on [-1, 1]
  kBradleyTerry,        // e^t / (1 + e^t)
  kThurstoneMosteller,  // standard normal CDF
  kAngular,             // (sin t + 1) / 2 on [-pi/2, pi/2]
};

// Accepts "uniform", "bradley-terry", "thurstone-mosteller", "angular".
// Throws std::invalid_argument otherwise.
LinkKind parse_link(std::string_view name);
std::string_view link_name(LinkKind link);

// Deltas outside a bounded link's domain clamp to the boundary.
double preference_prob(LinkKind link, double delta);

// Raised when an unbounded link is asked to invert 0 or 1.
class SaturatedProbability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double inverse_link(LinkKind link, double pi_hat);

// Continuity correction for an empirical probability from `count` samples:
// clips to [1/(2 count), 1 - 1/(2 count)].
double clip_empirical_probability(double pi_hat, int count);

// +1 with probability preference_prob(link, x_star[i] - x_star[j]), else -1.
int sample_label(LinkKind link, const ScoreVector& x_star, ItemIndex i,
                 ItemIndex j, Rng& rng);

// n i.i.d. U[0,1) scores.
ScoreVector generate_ground_truth(int n, Rng& rng);

}  // namespace hrank

#endif  // HRANK_GLM_H_
