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

#include "coc/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace coc {

namespace {

// Expands constant blocks into an IsotonicFit, coalescing adjacent blocks
// whose values compare equal so segments are maximal level sets.
IsotonicFit fit_from_blocks(
    const std::vector<std::pair<std::size_t, double>>& block_end_value,
    std::size_t n) {
  IsotonicFit fit;
  fit.values.resize(n);
  std::size_t begin = 0;
  for (const auto& [end, value] : block_end_value) {
    for (std::size_t i = begin; i < end; ++i) fit.values[i] = value;
    if (!fit.segments.empty() &&
        fit.values[fit.segments.back().begin] == value) {
      fit.segments.back().end = end;
    } else {
      fit.segments.push_back({begin, end});
    }
    begin = end;
  }
  return fit;
}

// Running lower median over mergeable multisets: a max-heap holds the lower
// half (its top is the lower median), a min-heap the upper half.
struct MedianHeap {
  std::vector<double> lo;  // max-heap
  std::vector<double> hi;  // min-heap

  std::size_t size() const { return lo.size() + hi.size(); }

  void push(double x) {
    if (lo.empty() || x <= lo.front()) {
      lo.push_back(x);
      std::push_heap(lo.begin(), lo.end());
    } else {
      hi.push_back(x);
      std::push_heap(hi.begin(), hi.end(), std::greater<>());
    }
    if (lo.size() > hi.size() + 1) {
      std::pop_heap(lo.begin(), lo.end());
      hi.push_back(lo.back());
      lo.pop_back();
      std::push_heap(hi.begin(), hi.end(), std::greater<>());
    } else if (hi.size() > lo.size()) {
      std::pop_heap(hi.begin(), hi.end(), std::greater<>());
      lo.push_back(hi.back());
      hi.pop_back();
      std::push_heap(lo.begin(), lo.end());
    }
  }

  double median() const { return lo.front(); }

  // Small-to-large merge; `other` is emptied.
  void absorb(MedianHeap& other) {
    if (other.size() > size()) {
      lo.swap(other.lo);
      hi.swap(other.hi);
    }
    for (double x : other.lo) push(x);
    for (double x : other.hi) push(x);
    other.lo.clear();
    other.hi.clear();
  }
};

}  // namespace

IsotonicFit isotonic_l2(std::span<const double> y, std::span<const double> w) {
  if (y.size() != w.size()) throw Error("isotonic_l2: |w| != |y|");
  struct Block {
    std::size_t begin, end;
    double wsum, wysum, value;
  };
  std::vector<Block> stack;
  stack.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(w[i] > 0.0)) throw Error("isotonic_l2: weights must be positive");
    Block cur{i, i + 1, w[i], w[i] * y[i], y[i]};
    while (!stack.empty() && stack.back().value > cur.value) {
      cur.begin = stack.back().begin;
      cur.wsum += stack.back().wsum;
      cur.wysum += stack.back().wysum;
      cur.value = cur.wysum / cur.wsum;
      stack.pop_back();
    }
    stack.push_back(cur);
  }
  std::vector<std::pair<std::size_t, double>> blocks;
  blocks.reserve(stack.size());
  for (const Block& b : stack) blocks.emplace_back(b.end, b.value);
  return fit_from_blocks(blocks, y.size());
}

IsotonicFit isotonic_l2(std::span<const double> y) {
  std::vector<double> w(y.size(), 1.0);
  return isotonic_l2(y, w);
}

IsotonicFit isotonic_l1(std::span<const double> y) {
  struct Block {
    std::size_t begin, end;
    MedianHeap heap;
    double value;
  };
  std::vector<Block> stack;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Block cur;
    cur.begin = i;
    cur.end = i + 1;
    cur.heap.push(y[i]);
    cur.value = y[i];
    while (!stack.empty() && stack.back().value > cur.value) {
      cur.begin = stack.back().begin;
      cur.heap.absorb(stack.back().heap);
      cur.value = cur.heap.median();
      stack.pop_back();
    }
    stack.push_back(std::move(cur));
  }
  std::vector<std::pair<std::size_t, double>> blocks;
  blocks.reserve(stack.size());
  for (const Block& b : stack) blocks.emplace_back(b.end, b.value);
  return fit_from_blocks(blocks, y.size());
}

IsotonicFit isotonic_constrained(std::span<const double> y, int p,
                                 double lower, double last_value) {
  if (p != 1 && p != 2) throw Error("isotonic_constrained: p must be 1 or 2");
  if (last_value < lower) {
    throw InfeasibleBounds("isotonic_constrained: last_value < lower");
  }
  const std::size_t n = y.size();
  if (n == 0) return IsotonicFit{};

  IsotonicFit fit;
  if (p == 2) {
    // Dominating weight on the last cell stands in for the equality pin;
    // the exact value is reassigned below.
    std::vector<double> y2(y.begin(), y.end());
    std::vector<double> w(n, 1.0);
    y2[n - 1] = last_value;
    w[n - 1] = 1e9;
    fit = isotonic_l2(y2, w);
  } else {
    // The pinned cell's residual is constant, so fit the prefix and append.
    std::vector<double> prefix(y.begin(), y.end() - 1);
    fit = isotonic_l1(prefix);
    fit.values.push_back(last_value);
    if (!fit.segments.empty() &&
        fit.values[fit.segments.back().begin] == last_value) {
      fit.segments.back().end = n;
    } else {
      fit.segments.push_back({n - 1, n});
    }
  }
  clamp_isotonic(fit, lower, last_value);
  // Pin the final level set exactly.
  const IsotonicSegment last_seg = fit.segments.back();
  for (std::size_t i = last_seg.begin; i < last_seg.end; ++i) {
    fit.values[i] = last_value;
  }
  clamp_isotonic(fit, lower, last_value);  // re-coalesce only
  return fit;
}

void clamp_isotonic(IsotonicFit& fit, double lower, double upper) {
  for (double& v : fit.values) v = std::min(std::max(v, lower), upper);
  std::vector<IsotonicSegment> merged;
  for (const auto& seg : fit.segments) {
    if (!merged.empty() &&
        fit.values[merged.back().begin] == fit.values[seg.begin]) {
      merged.back().end = seg.end;
    } else {
      merged.push_back(seg);
    }
  }
  fit.segments = std::move(merged);
}

std::vector<std::int64_t> partition_sizes(const IsotonicFit& fit) {
  std::vector<std::int64_t> sizes(fit.values.size());
  for (const auto& seg : fit.segments) {
    const std::int64_t len = static_cast<std::int64_t>(seg.end - seg.begin);
    for (std::size_t i = seg.begin; i < seg.end; ++i) sizes[i] = len;
  }
  return sizes;
}

}  // namespace coc
