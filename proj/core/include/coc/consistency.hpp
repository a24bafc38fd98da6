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
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coc/estimators.hpp"
#include "coc/hierarchy.hpp"
#include "coc/histogram.hpp"
#include "coc/isotonic.hpp"
#include "coc/noise.hpp"
#include "coc/rng.hpp"

namespace coc {

// Per-group variance estimates, aligned index-for-index with a node's
// sorted-sizes estimate.
struct GroupVariance {
  std::vector<double> vars;
};

// Variance of the i-th group under the Hg method: 2 / (|S_i| * eps^2),
// where S_i is the isotonic level set containing i.
GroupVariance variance_hg(const IsotonicFit& fit, PrivacyBudget eps);

// Variance of a group of estimated size s under the Hc method:
// 4 / (eps^2 * hat_h[s]).
GroupVariance variance_hc(const CountHistogram& hat_h, PrivacyBudget eps);

// Dispatch on the estimate's kind. The naive estimator follows the Hc rule
// with the cell variance of its scale-2/eps noise: 8 / (eps^2 * hat_h[s]).
GroupVariance variance_for(const NodeEstimate& estimate, PrivacyBudget eps);

// Assignment of each parent group to a (child slot, child group index).
struct MatchEntry {
  std::int32_t child;
  std::int64_t index;
};

struct Matching {
  std::vector<MatchEntry> assignment;  // indexed by parent group index
  std::int64_t total_cost = 0;         // sum of |parent size - child size|
};

// Least-cost perfect matching between a parent's groups and the pooled
// groups of its children, using the sorted-walk algorithm: repeatedly match
// the smallest unmatched parent groups against the smallest unmatched child
// groups, splitting ties across children proportionally. O(G log G), and
// optimal for the |size difference| edge weights. Arbitrary choices are
// made deterministic: ascending child slot, then ascending child index.
// Throws TotalMismatch unless len(parent) == sum of child lengths.
Matching match_groups(const UnattributedHistogram& parent,
                      const std::vector<UnattributedHistogram>& children);

// Splits r items over children proportionally to counts_per_child: the
// exact shares r*count/total are floored, then the k largest fractional
// parts round up (ties to the lower index) so the result sums to r, with
// output[c] <= counts_per_child[c]. Throws InfeasibleAllocation if
// r > sum(counts).
std::vector<std::int64_t> proportional_assign(
    std::span<const std::int64_t> counts_per_child, std::int64_t r);

// Inverse-variance combination of two estimates of one quantity:
// value    = (x_p/v_p + x_c/v_c) / (1/v_p + 1/v_c)
// variance = 1 / (1/v_p + 1/v_c)
// Throws NonPositiveVariance unless both variances are > 0 (+inf allowed).
std::pair<double, double> merge_estimates(double x_parent, double v_parent,
                                          double x_child, double v_child);

enum class MergeRule { kWeighted, kPlainAverage };

// One consistency desideratum violation, reported by check_consistency.
struct Violation {
  std::string node_id;
  std::string desideratum;  // "nonnegativity" | "group-size" | "consistency"
  std::int64_t index;       // size bucket, or -1 for totals
  std::int64_t lhs;
  std::int64_t rhs;
};

// Hierarchy-consistent private histograms, indexed like the tree's nodes.
struct ConsistentResult {
  std::vector<CountHistogram> hists;      // final H' per node
  std::vector<CountHistogram> raw_hists;  // pre-consistency estimates
  double eps_total = 0.0;                 // total privacy cost
  std::vector<double> eps_per_level;
};

// Per-level diagnostics emitted during the top-down sweep.
struct LevelDiagnostics {
  int level = 0;              // parent level of the sweep step
  std::int64_t parents = 0;
  std::int64_t matched_groups = 0;
  std::int64_t match_cost = 0;
  double mean_merged_variance = 0.0;
};

using DiagnosticsFn = std::function<void(const LevelDiagnostics&)>;

// Top-down consistency: estimate every node independently on an even
// per-level budget split, then sweep down the tree — match each parent's
// updated groups to its children's groups, merge each matched pair of size
// estimates, round, and re-sort — and finally back-substitute so that every
// internal histogram is the exact sum of its children. kinds has one entry
// per level. The result satisfies integrality, nonnegativity, group-size,
// and consistency at every node.
ConsistentResult top_down(const HierarchyTree& tree, PrivacyBudget eps,
                          std::span<const EstimatorKind> kinds, SizeBound k,
                          SeededRng rng, MergeRule rule = MergeRule::kWeighted,
                          const DiagnosticsFn& diag = nullptr);

// As above with an explicit per-level budget (one entry per level).
ConsistentResult top_down_levels(const HierarchyTree& tree,
                                 std::span<const double> eps_per_level,
                                 std::span<const EstimatorKind> kinds,
                                 SizeBound k, SeededRng rng,
                                 MergeRule rule = MergeRule::kWeighted,
                                 const DiagnosticsFn& diag = nullptr);

// Baseline: spend the whole budget at the leaves and sum upward. Trivially
// consistent; accurate at leaves, inaccurate at upper levels.
ConsistentResult bottom_up(const HierarchyTree& tree, PrivacyBudget eps,
                           EstimatorKind kind, SizeBound k, SeededRng rng);

// Independent per-node estimation without any consistency step (the raw
// estimates are published as-is). Generically violates consistency.
ConsistentResult independent_estimates(const HierarchyTree& tree,
                                       PrivacyBudget eps,
                                       std::span<const EstimatorKind> kinds,
                                       SizeBound k, SeededRng rng);

// Audits a result against the public structure: nonnegativity and
// group-size at every node, and parent = sum of children element-wise.
// Returns the empty vector iff all desiderata hold. (Integrality is
// inherent in the integer representation.)
std::vector<Violation> check_consistency(const ConsistentResult& result,
                                         const HierarchyTree& tree);

}  // namespace coc
