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

#include "coc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace coc {

namespace {

// Nearest integer, halves away from the floor (2.5 -> 3, -0.5 -> 0).
std::int64_t round_ties_up(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

std::vector<double> to_doubles(std::span<const std::int64_t> v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kNaive:
      return "naive";
    case EstimatorKind::kHg:
      return "hg";
    case EstimatorKind::kHcL1:
      return "hc-l1";
    case EstimatorKind::kHcL2:
      return "hc-l2";
  }
  return "?";
}

std::optional<EstimatorKind> parse_estimator_kind(std::string_view name) {
  if (name == "naive") return EstimatorKind::kNaive;
  if (name == "hg") return EstimatorKind::kHg;
  if (name == "hc" || name == "hc-l1") return EstimatorKind::kHcL1;
  if (name == "hc-l2") return EstimatorKind::kHcL2;
  return std::nullopt;
}

std::vector<std::int64_t> round_largest_fractional(std::span<const double> v,
                                                   std::int64_t total) {
  const std::size_t n = v.size();
  std::vector<std::int64_t> out(n);
  std::vector<double> frac(n);
  std::int64_t base = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = std::floor(v[i]);
    out[i] = static_cast<std::int64_t>(f);
    frac[i] = v[i] - f;
    base += out[i];
  }
  const std::int64_t r = total - base;
  if (r < 0 || r > static_cast<std::int64_t>(n)) {
    throw InfeasibleTotal("round_largest_fractional: need " + std::to_string(r) +
                          " round-ups over " + std::to_string(n) + " cells");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a < b;
  });
  for (std::int64_t i = 0; i < r; ++i) out[order[static_cast<std::size_t>(i)]] += 1;
  return out;
}

std::vector<double> project_simplex(std::span<const double> v, double total) {
  if (!(total >= 0.0)) throw Error("project_simplex: total must be >= 0");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double shift = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (total - prefix) / static_cast<double>(j + 1);
    if (sorted[j] + candidate > 0.0) {
      rho = j + 1;
      shift = candidate;
    }
  }
  std::vector<double> out(v.size());
  if (rho == 0) return out;  // all-zero projection of total 0
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] + shift, 0.0);
  }
  return out;
}

NodeEstimate estimate_naive(const CountHistogram& h, std::int64_t g,
                            SizeBound k, PrivacyBudget eps, SeededRng& rng) {
  if (h.total_groups() != g) {
    throw Error("estimate_naive: histogram total != public G");
  }
  const CountHistogram bounded = truncate_extend(h, k);
  const std::vector<std::int64_t> noisy =
      add_noise(bounded.counts, NoiseScale(2.0 / eps.epsilon), rng);
  const std::vector<double> projected =
      project_simplex(to_doubles(noisy), static_cast<double>(g));
  NodeEstimate est;
  est.kind = EstimatorKind::kNaive;
  est.eps_used = eps.epsilon;
  est.hat_h.counts = round_largest_fractional(projected, g);
  est.hat_hg = to_unattributed(est.hat_h);
  return est;
}

NodeEstimate estimate_hg_from_noisy(std::span<const std::int64_t> noisy,
                                    PrivacyBudget eps) {
  NodeEstimate est;
  est.kind = EstimatorKind::kHg;
  est.eps_used = eps.epsilon;
  if (noisy.empty()) return est;
  est.fit = isotonic_l2(to_doubles(noisy));
  clamp_isotonic(est.fit, 0.0, std::numeric_limits<double>::infinity());
  est.hat_hg.sizes.reserve(noisy.size());
  for (double v : est.fit.values) est.hat_hg.sizes.push_back(round_ties_up(v));
  est.hat_h = counts_from_sizes(est.hat_hg);
  return est;
}

NodeEstimate estimate_hg(const UnattributedHistogram& hg, PrivacyBudget eps,
                         SeededRng& rng) {
  if (hg.sizes.empty()) {
    NodeEstimate est;
    est.kind = EstimatorKind::kHg;
    est.eps_used = eps.epsilon;
    return est;
  }
  const std::vector<std::int64_t> noisy =
      add_noise(hg.sizes, NoiseScale(1.0 / eps.epsilon), rng);
  return estimate_hg_from_noisy(noisy, eps);
}

NodeEstimate estimate_hc_from_noisy(std::span<const std::int64_t> noisy,
                                    std::int64_t g, SizeBound k,
                                    PrivacyBudget eps, int p) {
  if (noisy.size() != static_cast<std::size_t>(k.k) + 1) {
    throw Error("estimate_hc: expected K+1 cumulative cells");
  }
  NodeEstimate est;
  est.kind = p == 1 ? EstimatorKind::kHcL1 : EstimatorKind::kHcL2;
  est.eps_used = eps.epsilon;
  est.fit =
      isotonic_constrained(to_doubles(noisy), p, 0.0, static_cast<double>(g));
  CumulativeHistogram csums;
  csums.csums.reserve(est.fit.values.size());
  std::int64_t prev = 0;
  for (double v : est.fit.values) {
    // Rounding a nondecreasing sequence is nondecreasing; the max-scan
    // keeps that explicit.
    prev = std::max(prev, round_ties_up(v));
    csums.csums.push_back(prev);
  }
  csums.csums.back() = g;  // pinned exactly
  est.hat_h = from_cumulative(csums);
  est.hat_hg = to_unattributed(est.hat_h);
  return est;
}

NodeEstimate estimate_hc(const CumulativeHistogram& hc, std::int64_t g,
                         SizeBound k, PrivacyBudget eps, int p,
                         SeededRng& rng) {
  if (hc.total_groups() != g) {
    throw Error("estimate_hc: cumulative histogram total != public G");
  }
  const std::vector<std::int64_t> noisy =
      add_noise(hc.csums, NoiseScale(1.0 / eps.epsilon), rng);
  return estimate_hc_from_noisy(noisy, g, k, eps, p);
}

NodeEstimate estimate_node(const CountHistogram& h, std::int64_t g,
                           SizeBound k, EstimatorKind kind, PrivacyBudget eps,
                           SeededRng& rng) {
  switch (kind) {
    case EstimatorKind::kNaive:
      return estimate_naive(h, g, k, eps, rng);
    case EstimatorKind::kHg:
      return estimate_hg(to_unattributed(h), eps, rng);
    case EstimatorKind::kHcL1:
      return estimate_hc(to_cumulative(truncate_extend(h, k)), g, k, eps, 1,
                         rng);
    case EstimatorKind::kHcL2:
      return estimate_hc(to_cumulative(truncate_extend(h, k)), g, k, eps, 2,
                         rng);
  }
  throw Error("estimate_node: unknown estimator kind");
}

}  // namespace coc
