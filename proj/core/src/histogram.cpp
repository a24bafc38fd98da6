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

#include "coc/histogram.hpp"

#include <algorithm>
#include <cstddef>

namespace coc {

std::int64_t CountHistogram::total_groups() const {
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  return total;
}

std::int64_t CountHistogram::total_people() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    total += static_cast<std::int64_t>(i) * counts[i];
  }
  return total;
}

CumulativeHistogram to_cumulative(const CountHistogram& h) {
  CumulativeHistogram out;
  out.csums.reserve(h.counts.size());
  std::int64_t running = 0;
  for (std::int64_t c : h.counts) {
    running += c;
    out.csums.push_back(running);
  }
  return out;
}

CountHistogram from_cumulative(const CumulativeHistogram& hc) {
  CountHistogram out;
  out.counts.reserve(hc.csums.size());
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < hc.csums.size(); ++i) {
    if (hc.csums[i] < prev) {
      throw DecreasingInput("from_cumulative: csums decreases at index " +
                            std::to_string(i));
    }
    out.counts.push_back(hc.csums[i] - prev);
    prev = hc.csums[i];
  }
  return out;
}

UnattributedHistogram to_unattributed(const CountHistogram& h) {
  UnattributedHistogram out;
  out.sizes.reserve(static_cast<std::size_t>(h.total_groups()));
  for (std::size_t size = 0; size < h.counts.size(); ++size) {
    if (h.counts[size] < 0) {
      throw Error("to_unattributed: negative count at size " +
                  std::to_string(size));
    }
    out.sizes.insert(out.sizes.end(), static_cast<std::size_t>(h.counts[size]),
                     static_cast<std::int64_t>(size));
  }
  return out;
}

CountHistogram from_unattributed(const UnattributedHistogram& hg, SizeBound k) {
  CountHistogram out;
  out.counts.assign(static_cast<std::size_t>(k.k) + 1, 0);
  std::int64_t prev = 0;
  bool first = true;
  for (std::size_t i = 0; i < hg.sizes.size(); ++i) {
    const std::int64_t s = hg.sizes[i];
    if (!first && s < prev) {
      throw DecreasingInput("from_unattributed: sizes decrease at index " +
                            std::to_string(i));
    }
    if (s < 0) throw Error("from_unattributed: negative group size");
    prev = s;
    first = false;
    out.counts[static_cast<std::size_t>(std::min(s, k.k))] += 1;
  }
  return out;
}

CountHistogram counts_from_sizes(const UnattributedHistogram& hg) {
  CountHistogram out;
  if (hg.sizes.empty()) return out;
  std::int64_t max_size = 0;
  for (std::int64_t s : hg.sizes) {
    if (s < 0) throw Error("counts_from_sizes: negative group size");
    max_size = std::max(max_size, s);
  }
  out.counts.assign(static_cast<std::size_t>(max_size) + 1, 0);
  for (std::int64_t s : hg.sizes) out.counts[static_cast<std::size_t>(s)] += 1;
  return out;
}

CountHistogram truncate_extend(const CountHistogram& h, SizeBound k) {
  CountHistogram out;
  const std::size_t n = static_cast<std::size_t>(k.k) + 1;
  out.counts.assign(n, 0);
  for (std::size_t size = 0; size < h.counts.size(); ++size) {
    out.counts[std::min(size, n - 1)] += h.counts[size];
  }
  return out;
}

std::int64_t emd(const CountHistogram& a, const CountHistogram& b) {
  if (a.total_groups() != b.total_groups()) {
    throw TotalMismatch("emd: group totals differ (" +
                        std::to_string(a.total_groups()) + " vs " +
                        std::to_string(b.total_groups()) + ")");
  }
  const std::size_t n = std::max(a.counts.size(), b.counts.size());
  std::int64_t dist = 0;
  std::int64_t ca = 0;
  std::int64_t cb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.counts.size()) ca += a.counts[i];
    if (i < b.counts.size()) cb += b.counts[i];
    dist += ca >= cb ? ca - cb : cb - ca;
  }
  return dist;
}

}  // namespace coc
