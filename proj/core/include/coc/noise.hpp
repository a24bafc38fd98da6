//
// Copyright 2026 The Cochist Authors
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
//

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "coc/error.hpp"
#include "coc/histogram.hpp"
#include "coc/rng.hpp"

namespace coc {

// Privacy loss budget epsilon. Must be positive; +infinity is accepted and
// yields noiseless output (used for exact/replay runs).
struct PrivacyBudget {
  double epsilon;

  explicit PrivacyBudget(double eps) : epsilon(eps) {
    if (!(eps > 0.0)) throw Error("PrivacyBudget: epsilon must be > 0");
  }
};

// Scale sensitivity/epsilon of the two-sided geometric distribution.
// Scale 0 is the degenerate limit: the point mass at 0.
struct NoiseScale {
  double scale;

  explicit NoiseScale(double s) : scale(s) {
    if (!(s >= 0.0)) throw Error("NoiseScale: scale must be >= 0");
  }
};

// One draw from the two-sided geometric law
//   P(X = k) = (1-a)/(1+a) * a^|k|,  a = exp(-1/scale),
// sampled exactly as the difference of two geometric variables with success
// probability 1-a. Integer-valued; mean 0; variance 2a/(1-a)^2.
std::int64_t sample_double_geometric(NoiseScale scale, SeededRng& rng);

// P(X = k) under the law above. Closed form of the mechanism distribution.
double double_geometric_pmf(NoiseScale scale, std::int64_t k);

// Exact variance 2a/(1-a)^2 of the law above (0 when scale is 0).
double double_geometric_variance(NoiseScale scale);

// One draw from Laplace(b) via inverse-CDF. Only used when privately
// estimating the size bound K; histogram cells always get integer noise.
double sample_laplace(double b, SeededRng& rng);

// out[i] = v[i] + independent double-geometric draw.
std::vector<std::int64_t> add_noise(std::span<const std::int64_t> v,
                                    NoiseScale scale, SeededRng& rng);

// Even split of the total budget over the levels of a hierarchy:
// each of the `levels` levels receives epsilon/levels.
// Throws NonPositiveLevels when levels < 1.
PrivacyBudget split_budget(PrivacyBudget total, int levels);

// Default budget set aside for estimating K; the bound needs very little
// accuracy.
inline constexpr double kDefaultSizeBoundEpsilon = 1e-4;

// K = ceil(max + draw + 5*sqrt(2)/eps), floored at 1, for a given Laplace
// draw. Split out so the formula can be checked with a forced draw.
SizeBound size_bound_from_draw(std::int64_t max_size, PrivacyBudget eps_k,
                               double laplace_draw);

// Private overestimate of the maximum group size: add Laplace(1/eps_k) plus
// five standard deviations to the true maximum, so P(K >= max) > 0.9995.
// Throws EmptyHistogram when there are no groups.
SizeBound estimate_size_bound(const UnattributedHistogram& hg,
                              PrivacyBudget eps_k, SeededRng& rng);

}  // namespace coc
