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
#include <vector>

#include "coc/error.hpp"

namespace coc {

// Public upper bound K on group size. Bounded histograms cover sizes 0..K.
struct SizeBound {
  std::int64_t k;

  explicit SizeBound(std::int64_t k_in) : k(k_in) {
    if (k < 1) throw Error("SizeBound: K must be >= 1");
  }
};

// Count-of-counts histogram: counts[i] is the number of groups with exactly
// i members. Size 0 (groups with no members) is a valid bucket.
struct CountHistogram {
  std::vector<std::int64_t> counts;

  std::int64_t total_groups() const;
  std::int64_t total_people() const;
};

// Running sums: csums[i] is the number of groups of size <= i. The final
// entry equals the group total G.
struct CumulativeHistogram {
  std::vector<std::int64_t> csums;

  std::int64_t total_groups() const { return csums.empty() ? 0 : csums.back(); }
};

// Sorted group sizes: sizes[i] is the size of the i-th smallest group.
// Length equals the group total G.
struct UnattributedHistogram {
  std::vector<std::int64_t> sizes;

  std::int64_t group_count() const {
    return static_cast<std::int64_t>(sizes.size());
  }
};

CumulativeHistogram to_cumulative(const CountHistogram& h);

// Inverse of to_cumulative. Throws DecreasingInput if csums ever decreases.
CountHistogram from_cumulative(const CumulativeHistogram& hc);

UnattributedHistogram to_unattributed(const CountHistogram& h);

// Counts the multiplicity of each size in `hg`, clamping sizes above K into
// the K bucket. Output has length K+1. Throws DecreasingInput if unsorted.
CountHistogram from_unattributed(const UnattributedHistogram& hg, SizeBound k);

// Natural-length inverse: output covers 0..max(hg) with no clamping.
CountHistogram counts_from_sizes(const UnattributedHistogram& hg);

// Moves all mass at sizes >= K into bucket K and zero-pads to length K+1.
// The group total is preserved.
CountHistogram truncate_extend(const CountHistogram& h, SizeBound k);

// Earthmover's distance between two histograms with equal group totals:
// the minimum number of person additions/removals turning one into the
// other, computed as the L1 distance of the cumulative forms (the shorter
// cumulative histogram is padded with its final value). Throws
// TotalMismatch when the totals differ.
std::int64_t emd(const CountHistogram& a, const CountHistogram& b);

}  // namespace coc
