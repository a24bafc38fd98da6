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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coc/error.hpp"

namespace coc {

// Half-open index range [begin, end) over which an isotonic fit is constant.
struct IsotonicSegment {
  std::size_t begin;
  std::size_t end;
};

// Result of an isotonic regression: a nondecreasing sequence together with
// its level sets. Segments partition [0, n); values are equal within a
// segment and strictly increase from one segment to the next.
struct IsotonicFit {
  std::vector<double> values;
  std::vector<IsotonicSegment> segments;
};

// Weighted L2 isotonic regression by pool-adjacent-violators:
// minimizes sum w[i]*(y[i]-x[i])^2 over nondecreasing x. Each segment's
// value is the weighted mean of its inputs. O(n).
IsotonicFit isotonic_l2(std::span<const double> y, std::span<const double> w);

// Unit-weight convenience overload.
IsotonicFit isotonic_l2(std::span<const double> y);

// L1 isotonic regression: minimizes sum |y[i]-x[i]| over nondecreasing x.
// Pool-adjacent-violators with per-block medians (lower median on ties, so
// integer input gives integer output). O(n log n). The L1 optimum is not
// unique; the output is deterministic for a fixed input.
IsotonicFit isotonic_l1(std::span<const double> y);

// Isotonic regression under the p-norm (p = 1 or 2) subject to
// x[i] >= lower for all i and x[n-1] = last_value exactly.
// Throws InfeasibleBounds when last_value < lower.
IsotonicFit isotonic_constrained(std::span<const double> y, int p,
                                 double lower, double last_value);

// Clamps a fit into [lower, upper] in place, re-coalescing level sets the
// clamp made equal. Clamping a monotone fit preserves monotonicity and, for
// the L2 objective, box-constrained optimality.
void clamp_isotonic(IsotonicFit& fit, double lower, double upper);

// For each index i, the size of the level set containing i.
std::vector<std::int64_t> partition_sizes(const IsotonicFit& fit);

}  // namespace coc
