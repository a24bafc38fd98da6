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

#include "coc/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace coc {

namespace {

// Variance stand-in for noiseless (epsilon = inf) runs. Small enough to be
// exact in merges, large enough that 1/v cannot overflow.
constexpr double kExactVariance = 1e-12;

std::int64_t round_ties_up(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

// Sorted-walk matching over spans; shared by the public entry point and by
// top_down (which matches against child estimates without copying them).
Matching match_spans(std::span<const std::int64_t> parent,
                     std::span<const std::span<const std::int64_t>> children) {
  std::size_t bottom_total = 0;
  for (const auto& c : children) bottom_total += c.size();
  if (bottom_total != parent.size()) {
    throw TotalMismatch("match_groups: parent has " +
                        std::to_string(parent.size()) + " groups, children " +
                        std::to_string(bottom_total));
  }

  Matching m;
  m.assignment.resize(parent.size());

  // Run state per child: next unmatched index and remaining entries of the
  // current equal-size run.
  const std::size_t num_children = children.size();
  std::vector<std::size_t> pos(num_children, 0);
  std::vector<std::int64_t> run_left(num_children, 0);
  std::vector<std::int64_t> run_size(num_children, 0);

  using HeapItem = std::pair<std::int64_t, std::int32_t>;  // (size, child)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;

  auto load_run = [&](std::int32_t c) {
    const auto& sizes = children[static_cast<std::size_t>(c)];
    std::size_t& p = pos[static_cast<std::size_t>(c)];
    if (p >= sizes.size()) return;
    const std::int64_t s = sizes[p];
    std::size_t end = p;
    while (end < sizes.size() && sizes[end] == s) ++end;
    if (end < sizes.size() && sizes[end] < s) {
      throw DecreasingInput("match_groups: child sizes not sorted");
    }
    run_size[static_cast<std::size_t>(c)] = s;
    run_left[static_cast<std::size_t>(c)] =
        static_cast<std::int64_t>(end - p);
    heap.emplace(s, c);
  };
  for (std::size_t c = 0; c < num_children; ++c) {
    load_run(static_cast<std::int32_t>(c));
  }

  std::size_t p_pos = 0;
  while (p_pos < parent.size()) {
    // Current run of smallest unmatched parent groups.
    const std::int64_t s_top = parent[p_pos];
    std::size_t p_end = p_pos;
    while (p_end < parent.size() && parent[p_end] == s_top) ++p_end;
    if (p_end < parent.size() && parent[p_end] < s_top) {
      throw DecreasingInput("match_groups: parent sizes not sorted");
    }
    std::int64_t top_left = static_cast<std::int64_t>(p_end - p_pos);

    while (top_left > 0) {
      if (heap.empty()) {
        throw StructureError("match_groups: ran out of child groups");
      }
      // All smallest unmatched child groups, ascending child slot.
      const std::int64_t s_bot = heap.top().first;
      std::vector<std::int32_t> tied;
      std::int64_t bot_total = 0;
      while (!heap.empty() && heap.top().first == s_bot) {
        tied.push_back(heap.top().second);
        bot_total += run_left[static_cast<std::size_t>(heap.top().second)];
        heap.pop();
      }
      const std::int64_t pair_cost = std::llabs(s_top - s_bot);

      if (top_left >= bot_total) {
        // Every tied child group can be matched now.
        for (std::int32_t c : tied) {
          std::int64_t& left = run_left[static_cast<std::size_t>(c)];
          for (; left > 0; --left) {
            m.assignment[p_pos++] = {c, static_cast<std::int64_t>(
                                            pos[static_cast<std::size_t>(c)]++)};
            m.total_cost += pair_cost;
          }
          load_run(c);
        }
        top_left -= bot_total;
      } else {
        // Split the parent run proportionally over the tied children.
        std::vector<std::int64_t> counts;
        counts.reserve(tied.size());
        for (std::int32_t c : tied) {
          counts.push_back(run_left[static_cast<std::size_t>(c)]);
        }
        const std::vector<std::int64_t> take =
            proportional_assign(counts, top_left);
        for (std::size_t t = 0; t < tied.size(); ++t) {
          const std::int32_t c = tied[t];
          for (std::int64_t j = 0; j < take[t]; ++j) {
            m.assignment[p_pos++] = {c, static_cast<std::int64_t>(
                                            pos[static_cast<std::size_t>(c)]++)};
            m.total_cost += pair_cost;
          }
          run_left[static_cast<std::size_t>(c)] -= take[t];
          if (run_left[static_cast<std::size_t>(c)] > 0) {
            heap.emplace(s_bot, c);
          } else {
            load_run(c);
          }
        }
        top_left = 0;
      }
    }
  }
  return m;
}

std::vector<std::int64_t> padded_child_sum(const HierarchyTree& tree,
                                           const std::vector<CountHistogram>& hists,
                                           int idx) {
  std::vector<std::int64_t> sum;
  for (int c : tree.nodes[static_cast<std::size_t>(idx)].children) {
    const auto& counts = hists[static_cast<std::size_t>(c)].counts;
    if (counts.size() > sum.size()) sum.resize(counts.size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) sum[i] += counts[i];
  }
  return sum;
}

}  // namespace

GroupVariance variance_hg(const IsotonicFit& fit, PrivacyBudget eps) {
  GroupVariance out;
  const std::vector<std::int64_t> sizes = partition_sizes(fit);
  out.vars.reserve(sizes.size());
  if (std::isinf(eps.epsilon)) {
    out.vars.assign(sizes.size(), kExactVariance);
    return out;
  }
  const double eps2 = eps.epsilon * eps.epsilon;
  for (std::int64_t s : sizes) {
    out.vars.push_back(2.0 / (static_cast<double>(s) * eps2));
  }
  return out;
}

GroupVariance variance_hc(const CountHistogram& hat_h, PrivacyBudget eps) {
  GroupVariance out;
  out.vars.reserve(static_cast<std::size_t>(hat_h.total_groups()));
  const bool exact = std::isinf(eps.epsilon);
  const double eps2 = eps.epsilon * eps.epsilon;
  for (std::size_t size = 0; size < hat_h.counts.size(); ++size) {
    const std::int64_t count = hat_h.counts[size];
    if (count < 0) throw Error("variance_hc: negative count");
    const double var =
        exact ? kExactVariance : 4.0 / (eps2 * static_cast<double>(count));
    for (std::int64_t j = 0; j < count; ++j) out.vars.push_back(var);
  }
  return out;
}

GroupVariance variance_for(const NodeEstimate& estimate, PrivacyBudget eps) {
  switch (estimate.kind) {
    case EstimatorKind::kHg:
      return variance_hg(estimate.fit, eps);
    case EstimatorKind::kHcL1:
    case EstimatorKind::kHcL2:
      return variance_hc(estimate.hat_h, eps);
    case EstimatorKind::kNaive: {
      // Same per-size argument as the Hc rule, with the cell variance of
      // scale-2/eps noise: 2*(2/eps)^2 = 8/eps^2.
      GroupVariance out = variance_hc(estimate.hat_h, eps);
      for (double& v : out.vars) {
        if (v != kExactVariance) v *= 2.0;
      }
      return out;
    }
  }
  throw Error("variance_for: unknown estimator kind");
}

Matching match_groups(const UnattributedHistogram& parent,
                      const std::vector<UnattributedHistogram>& children) {
  std::vector<std::span<const std::int64_t>> spans;
  spans.reserve(children.size());
  for (const auto& c : children) spans.emplace_back(c.sizes);
  return match_spans(parent.sizes, spans);
}

std::vector<std::int64_t> proportional_assign(
    std::span<const std::int64_t> counts_per_child, std::int64_t r) {
  std::int64_t total = 0;
  for (std::int64_t c : counts_per_child) {
    if (c < 0) throw Error("proportional_assign: negative count");
    total += c;
  }
  if (r < 0 || r > total) {
    throw InfeasibleAllocation("proportional_assign: r=" + std::to_string(r) +
                               " outside [0, " + std::to_string(total) + "]");
  }
  const std::size_t n = counts_per_child.size();
  std::vector<std::int64_t> out(n, 0);
  if (r == 0) return out;
  std::vector<double> frac(n, 0.0);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double share = static_cast<double>(r) *
                         static_cast<double>(counts_per_child[i]) /
                         static_cast<double>(total);
    out[i] = static_cast<std::int64_t>(std::floor(share));
    // Guard against floor(share) exceeding the cap through rounding.
    out[i] = std::min(out[i], counts_per_child[i]);
    frac[i] = share - static_cast<double>(out[i]);
    assigned += out[i];
  }
  std::int64_t remainder = r - assigned;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a < b;
  });
  for (std::size_t pick = 0; remainder > 0; ++pick) {
    // Cycle in fractional-part order, skipping capped children; total
    // capacity >= r guarantees termination.
    const std::size_t i = order[pick % n];
    if (out[i] < counts_per_child[i]) {
      out[i] += 1;
      --remainder;
    }
  }
  return out;
}

std::pair<double, double> merge_estimates(double x_parent, double v_parent,
                                          double x_child, double v_child) {
  if (!(v_parent > 0.0) || !(v_child > 0.0)) {
    throw NonPositiveVariance("merge_estimates: variances must be > 0");
  }
  const double wp = 1.0 / v_parent;
  const double wc = 1.0 / v_child;
  const double wsum = wp + wc;
  if (wsum == 0.0) {
    // Both variances infinite: nothing is known either way.
    return {0.5 * (x_parent + x_child),
            std::numeric_limits<double>::infinity()};
  }
  return {(x_parent * wp + x_child * wc) / wsum, 1.0 / wsum};
}

namespace {

ConsistentResult sweep_top_down(const HierarchyTree& tree,
                                std::span<const double> eps_per_level,
                                std::span<const EstimatorKind> kinds,
                                SizeBound k, SeededRng rng, MergeRule rule,
                                const DiagnosticsFn& diag) {
  const int levels = tree.levels();
  if (static_cast<int>(kinds.size()) != levels) {
    throw Error("top_down: need one estimator kind per level");
  }
  if (static_cast<int>(eps_per_level.size()) != levels) {
    throw Error("top_down: need one budget per level");
  }

  const std::size_t n = tree.nodes.size();
  std::vector<NodeEstimate> ests(n);
  std::vector<std::vector<double>> base_vars(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const HierarchyNode& node = tree.nodes[idx];
    const PrivacyBudget eps_l(
        eps_per_level[static_cast<std::size_t>(node.level)]);
    SeededRng node_rng = rng.child(node.id);
    ests[idx] = estimate_node(node.hist, node.group_count, k,
                              kinds[static_cast<std::size_t>(node.level)],
                              eps_l, node_rng);
    base_vars[idx] = variance_for(ests[idx], eps_l).vars;
  }

  // Sweep state: current merged sizes (sorted) and their variances.
  std::vector<std::vector<std::int64_t>> cur_sizes(n);
  std::vector<std::vector<double>> cur_vars(n);
  const std::size_t root = 0;
  cur_sizes[root] = ests[root].hat_hg.sizes;
  cur_vars[root] = base_vars[root];

  for (int level = 0; level + 1 < levels; ++level) {
    LevelDiagnostics stats;
    stats.level = level;
    double var_sum = 0.0;
    for (int parent_idx : tree.by_level[static_cast<std::size_t>(level)]) {
      const HierarchyNode& parent = tree.nodes[static_cast<std::size_t>(parent_idx)];
      const auto& parent_sizes = cur_sizes[static_cast<std::size_t>(parent_idx)];
      const auto& parent_vars = cur_vars[static_cast<std::size_t>(parent_idx)];

      std::vector<std::span<const std::int64_t>> child_spans;
      child_spans.reserve(parent.children.size());
      for (int c : parent.children) {
        child_spans.emplace_back(ests[static_cast<std::size_t>(c)].hat_hg.sizes);
      }
      const Matching m = match_spans(parent_sizes, child_spans);

      // Merge each matched pair into the child's updated estimate.
      std::vector<std::vector<std::int64_t>> new_sizes(parent.children.size());
      std::vector<std::vector<double>> new_vars(parent.children.size());
      for (std::size_t slot = 0; slot < parent.children.size(); ++slot) {
        const std::size_t c =
            static_cast<std::size_t>(parent.children[slot]);
        new_sizes[slot].resize(ests[c].hat_hg.sizes.size());
        new_vars[slot].resize(ests[c].hat_hg.sizes.size());
      }
      for (std::size_t i = 0; i < parent_sizes.size(); ++i) {
        const MatchEntry e = m.assignment[i];
        const std::size_t c =
            static_cast<std::size_t>(parent.children[static_cast<std::size_t>(e.child)]);
        const double x_p = static_cast<double>(parent_sizes[i]);
        const double x_c =
            static_cast<double>(ests[c].hat_hg.sizes[static_cast<std::size_t>(e.index)]);
        double value = 0.0;
        double var = 0.0;
        if (rule == MergeRule::kWeighted) {
          std::tie(value, var) =
              merge_estimates(x_p, parent_vars[i], x_c,
                              base_vars[c][static_cast<std::size_t>(e.index)]);
        } else {
          value = 0.5 * (x_p + x_c);
          var = 0.25 * (parent_vars[i] +
                        base_vars[c][static_cast<std::size_t>(e.index)]);
        }
        new_sizes[static_cast<std::size_t>(e.child)][static_cast<std::size_t>(e.index)] =
            round_ties_up(value);
        new_vars[static_cast<std::size_t>(e.child)][static_cast<std::size_t>(e.index)] =
            var;
        var_sum += var;
      }

      // Merged sizes need not stay sorted; restore monotonicity, carrying
      // each group's variance with it.
      for (std::size_t slot = 0; slot < parent.children.size(); ++slot) {
        const std::size_t c =
            static_cast<std::size_t>(parent.children[slot]);
        auto& sizes = new_sizes[slot];
        auto& vars = new_vars[slot];
        std::vector<std::size_t> order(sizes.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return sizes[a] < sizes[b];
                         });
        auto& dst_sizes = cur_sizes[c];
        auto& dst_vars = cur_vars[c];
        dst_sizes.resize(sizes.size());
        dst_vars.resize(vars.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
          dst_sizes[i] = sizes[order[i]];
          dst_vars[i] = vars[order[i]];
        }
      }

      stats.parents += 1;
      stats.matched_groups += static_cast<std::int64_t>(parent_sizes.size());
      stats.match_cost += m.total_cost;
    }
    if (diag) {
      stats.mean_merged_variance =
          stats.matched_groups > 0
              ? var_sum / static_cast<double>(stats.matched_groups)
              : 0.0;
      diag(stats);
    }
  }

  ConsistentResult result;
  result.hists.resize(n);
  result.raw_hists.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    result.raw_hists[idx] = ests[idx].hat_h;
  }
  for (int leaf : tree.by_level[static_cast<std::size_t>(levels - 1)]) {
    UnattributedHistogram hg;
    hg.sizes = std::move(cur_sizes[static_cast<std::size_t>(leaf)]);
    result.hists[static_cast<std::size_t>(leaf)] = counts_from_sizes(hg);
  }
  for (int level = levels - 2; level >= 0; --level) {
    for (int idx : tree.by_level[static_cast<std::size_t>(level)]) {
      result.hists[static_cast<std::size_t>(idx)].counts =
          padded_child_sum(tree, result.hists, idx);
    }
  }
  result.eps_per_level.assign(eps_per_level.begin(), eps_per_level.end());
  result.eps_total = 0.0;
  for (double e : eps_per_level) result.eps_total += e;
  return result;
}

}  // namespace

ConsistentResult top_down(const HierarchyTree& tree, PrivacyBudget eps,
                          std::span<const EstimatorKind> kinds, SizeBound k,
                          SeededRng rng, MergeRule rule,
                          const DiagnosticsFn& diag) {
  const PrivacyBudget share = split_budget(eps, tree.levels());
  std::vector<double> eps_per_level(static_cast<std::size_t>(tree.levels()),
                                    share.epsilon);
  return sweep_top_down(tree, eps_per_level, kinds, k, rng, rule, diag);
}

ConsistentResult top_down_levels(const HierarchyTree& tree,
                                 std::span<const double> eps_per_level,
                                 std::span<const EstimatorKind> kinds,
                                 SizeBound k, SeededRng rng, MergeRule rule,
                                 const DiagnosticsFn& diag) {
  return sweep_top_down(tree, eps_per_level, kinds, k, rng, rule, diag);
}

ConsistentResult bottom_up(const HierarchyTree& tree, PrivacyBudget eps,
                           EstimatorKind kind, SizeBound k, SeededRng rng) {
  const int levels = tree.levels();
  const std::size_t n = tree.nodes.size();
  ConsistentResult result;
  result.hists.resize(n);
  result.raw_hists.resize(n);
  for (int leaf : tree.by_level[static_cast<std::size_t>(levels - 1)]) {
    const HierarchyNode& node = tree.nodes[static_cast<std::size_t>(leaf)];
    SeededRng node_rng = rng.child(node.id);
    NodeEstimate est =
        estimate_node(node.hist, node.group_count, k, kind, eps, node_rng);
    result.raw_hists[static_cast<std::size_t>(leaf)] = est.hat_h;
    result.hists[static_cast<std::size_t>(leaf)] = std::move(est.hat_h);
  }
  for (int level = levels - 2; level >= 0; --level) {
    for (int idx : tree.by_level[static_cast<std::size_t>(level)]) {
      result.hists[static_cast<std::size_t>(idx)].counts =
          padded_child_sum(tree, result.hists, idx);
    }
  }
  result.eps_total = eps.epsilon;
  result.eps_per_level.assign(static_cast<std::size_t>(levels), 0.0);
  result.eps_per_level.back() = eps.epsilon;
  return result;
}

ConsistentResult independent_estimates(const HierarchyTree& tree,
                                       PrivacyBudget eps,
                                       std::span<const EstimatorKind> kinds,
                                       SizeBound k, SeededRng rng) {
  const int levels = tree.levels();
  if (static_cast<int>(kinds.size()) != levels) {
    throw Error("independent_estimates: need one estimator kind per level");
  }
  const PrivacyBudget share = split_budget(eps, levels);
  const std::size_t n = tree.nodes.size();
  ConsistentResult result;
  result.hists.resize(n);
  result.raw_hists.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const HierarchyNode& node = tree.nodes[idx];
    SeededRng node_rng = rng.child(node.id);
    NodeEstimate est =
        estimate_node(node.hist, node.group_count, k,
                      kinds[static_cast<std::size_t>(node.level)], share,
                      node_rng);
    result.raw_hists[idx] = est.hat_h;
    result.hists[idx] = std::move(est.hat_h);
  }
  result.eps_total = eps.epsilon;
  result.eps_per_level.assign(static_cast<std::size_t>(levels), share.epsilon);
  return result;
}

std::vector<Violation> check_consistency(const ConsistentResult& result,
                                         const HierarchyTree& tree) {
  if (result.hists.size() != tree.nodes.size()) {
    throw Error("check_consistency: result does not match tree");
  }
  std::vector<Violation> violations;
  for (std::size_t idx = 0; idx < tree.nodes.size(); ++idx) {
    const HierarchyNode& node = tree.nodes[idx];
    const CountHistogram& h = result.hists[idx];
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      if (h.counts[i] < 0) {
        violations.push_back({node.id, "nonnegativity",
                              static_cast<std::int64_t>(i), h.counts[i], 0});
      }
    }
    if (h.total_groups() != node.group_count) {
      violations.push_back(
          {node.id, "group-size", -1, h.total_groups(), node.group_count});
    }
    if (!node.children.empty()) {
      const std::vector<std::int64_t> sum =
          padded_child_sum(tree, result.hists, static_cast<int>(idx));
      const std::size_t width = std::max(sum.size(), h.counts.size());
      for (std::size_t i = 0; i < width; ++i) {
        const std::int64_t lhs = i < h.counts.size() ? h.counts[i] : 0;
        const std::int64_t rhs = i < sum.size() ? sum[i] : 0;
        if (lhs != rhs) {
          violations.push_back(
              {node.id, "consistency", static_cast<std::int64_t>(i), lhs, rhs});
        }
      }
    }
  }
  return violations;
}

}  // namespace coc
