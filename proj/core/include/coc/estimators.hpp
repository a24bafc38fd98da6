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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "coc/histogram.hpp"
#include "coc/isotonic.hpp"
#include "coc/noise.hpp"
#include "coc/rng.hpp"

namespace coc {

// Single-node estimation strategies. Hc comes in L1 and L2 flavors; L1 is
// the default since it keeps the fit mostly integral.
enum class EstimatorKind { kNaive, kHg, kHcL1, kHcL2 };

std::string_view to_string(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator_kind(std::string_view name);

// A private estimate for one node. hat_h is integral, nonnegative, and sums
// to the node's public group total; hat_hg is its sorted-sizes form. The
// isotonic fit is kept for downstream variance estimation.
struct NodeEstimate {
  CountHistogram hat_h;
  UnattributedHistogram hat_hg;
  IsotonicFit fit;
  EstimatorKind kind = EstimatorKind::kHcL1;
  double eps_used = 0.0;
};

// Rounds v to integers preserving the requested total: with
// r = total - sum(floor(v)), the r cells with the largest fractional parts
// round up (ties broken by lower index) and the rest round down. Throws
// InfeasibleTotal when no such rounding exists.
std::vector<std::int64_t> round_largest_fractional(std::span<const double> v,
                                                   std::int64_t total);

// Euclidean projection onto {x >= 0, sum x = total} by the sorted-threshold
// method. O(n log n).
std::vector<double> project_simplex(std::span<const double> v, double total);

// Baseline: noise of scale 2/eps on every cell of the K-bounded histogram,
// then projection onto the G-simplex and total-preserving rounding.
NodeEstimate estimate_naive(const CountHistogram& h, std::int64_t g,
                            SizeBound k, PrivacyBudget eps, SeededRng& rng);

// Unattributed-histogram method: noise of scale 1/eps on each sorted group
// size, L2 isotonic regression with lower bound 0, then rounding. The group
// total is preserved by construction (the length is fixed). A node with no
// groups returns the empty estimate without consuming any draws.
NodeEstimate estimate_hg(const UnattributedHistogram& hg, PrivacyBudget eps,
                         SeededRng& rng);

// Post-noise tail of estimate_hg; lets tests drive the pipeline with a
// fixed noisy array.
NodeEstimate estimate_hg_from_noisy(std::span<const std::int64_t> noisy,
                                    PrivacyBudget eps);

// Cumulative-histogram method: noise of scale 1/eps on each cell of the
// K-bounded cumulative histogram, isotonic regression (p = 1 or 2) with
// lower bound 0 and final value pinned to G, rounding, then differencing
// back to a count histogram. The result sums to G exactly.
// Expects hc built via truncate_extend (length K+1, final entry G).
NodeEstimate estimate_hc(const CumulativeHistogram& hc, std::int64_t g,
                         SizeBound k, PrivacyBudget eps, int p,
                         SeededRng& rng);

// Post-noise tail of estimate_hc.
NodeEstimate estimate_hc_from_noisy(std::span<const std::int64_t> noisy,
                                    std::int64_t g, SizeBound k,
                                    PrivacyBudget eps, int p);

// Dispatch on kind, building the representation the estimator needs from
// the node's true histogram.
NodeEstimate estimate_node(const CountHistogram& h, std::int64_t g,
                           SizeBound k, EstimatorKind kind, PrivacyBudget eps,
                           SeededRng& rng);

}  // namespace coc
