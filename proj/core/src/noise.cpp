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

#include "coc/noise.hpp"

#include <algorithm>
#include <cmath>

namespace coc {

namespace {

// Geometric draw with P(G = g) = (1-a) a^g for g = 0, 1, 2, ... by CDF
// inversion; a = exp(-1/scale).
std::int64_t sample_geometric(double scale, SeededRng& rng) {
  const double u = rng.next_unit_open();  // (0, 1]
  // floor(log(u) / log(a)) with log(a) = -1/scale.
  return static_cast<std::int64_t>(std::floor(-scale * std::log(u)));
}

}  // namespace

std::int64_t sample_double_geometric(NoiseScale scale, SeededRng& rng) {
  if (scale.scale == 0.0) return 0;
  const std::int64_t a = sample_geometric(scale.scale, rng);
  const std::int64_t b = sample_geometric(scale.scale, rng);
  return a - b;
}

double double_geometric_pmf(NoiseScale scale, std::int64_t k) {
  if (scale.scale == 0.0) return k == 0 ? 1.0 : 0.0;
  const double alpha = std::exp(-1.0 / scale.scale);
  return (1.0 - alpha) / (1.0 + alpha) *
         std::pow(alpha, static_cast<double>(k < 0 ? -k : k));
}

double double_geometric_variance(NoiseScale scale) {
  if (scale.scale == 0.0) return 0.0;
  const double alpha = std::exp(-1.0 / scale.scale);
  return 2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
}

double sample_laplace(double b, SeededRng& rng) {
  // Inverse CDF with u uniform in (-1/2, 1/2].
  const double u = rng.next_unit_open() - 0.5;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -b * sign * std::log1p(-2.0 * std::abs(u));
}

std::vector<std::int64_t> add_noise(std::span<const std::int64_t> v,
                                    NoiseScale scale, SeededRng& rng) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (std::int64_t x : v) out.push_back(x + sample_double_geometric(scale, rng));
  return out;
}

PrivacyBudget split_budget(PrivacyBudget total, int levels) {
  if (levels < 1) {
    throw NonPositiveLevels("split_budget: levels must be >= 1, got " +
                            std::to_string(levels));
  }
  return PrivacyBudget(total.epsilon / static_cast<double>(levels));
}

SizeBound size_bound_from_draw(std::int64_t max_size, PrivacyBudget eps_k,
                               double laplace_draw) {
  const double margin = 5.0 * std::sqrt(2.0) / eps_k.epsilon;
  const double k = std::ceil(static_cast<double>(max_size) + laplace_draw + margin);
  return SizeBound(std::max<std::int64_t>(1, static_cast<std::int64_t>(k)));
}

SizeBound estimate_size_bound(const UnattributedHistogram& hg,
                              PrivacyBudget eps_k, SeededRng& rng) {
  if (hg.sizes.empty()) {
    throw EmptyHistogram("estimate_size_bound: no groups");
  }
  const std::int64_t max_size = *std::max_element(hg.sizes.begin(), hg.sizes.end());
  return size_bound_from_draw(max_size, eps_k,
                              sample_laplace(1.0 / eps_k.epsilon, rng));
}

}  // namespace coc
