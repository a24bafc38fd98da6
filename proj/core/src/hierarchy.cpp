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

#include "coc/hierarchy.hpp"

#include <algorithm>

namespace coc {

void HierarchyTree::finalize() {
  if (nodes.empty()) throw StructureError("hierarchy: no nodes");
  if (nodes[0].level != 0 || nodes[0].parent != -1) {
    throw StructureError("hierarchy: node 0 must be the level-0 root");
  }
  int max_level = 0;
  for (const auto& node : nodes) max_level = std::max(max_level, node.level);

  for (auto& node : nodes) node.children.clear();
  by_level.assign(static_cast<std::size_t>(max_level) + 1, {});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const HierarchyNode& node = nodes[i];
    if (node.level < 0 || node.level > max_level) {
      throw StructureError("hierarchy: bad level at node " + node.id);
    }
    by_level[static_cast<std::size_t>(node.level)].push_back(
        static_cast<int>(i));
    if (i == 0) continue;
    if (node.parent < 0 || node.parent >= static_cast<int>(nodes.size())) {
      throw StructureError("hierarchy: bad parent at node " + node.id);
    }
    if (nodes[static_cast<std::size_t>(node.parent)].level != node.level - 1) {
      throw StructureError("hierarchy: parent of " + node.id +
                           " is not one level up");
    }
    nodes[static_cast<std::size_t>(node.parent)].children.push_back(
        static_cast<int>(i));
  }
  if (by_level[0].size() != 1) {
    throw StructureError("hierarchy: exactly one root required");
  }
  for (std::size_t l = 0; l < by_level.size(); ++l) {
    if (by_level[l].empty()) {
      throw StructureError("hierarchy: empty level " + std::to_string(l));
    }
  }
  const int leaf_level = max_level;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const HierarchyNode& node = nodes[i];
    if (node.children.empty() != (node.level == leaf_level)) {
      throw StructureError("hierarchy: node " + node.id +
                           " must have children iff it is internal");
    }
    if (!node.children.empty()) {
      std::int64_t child_total = 0;
      for (int c : node.children) {
        child_total += nodes[static_cast<std::size_t>(c)].group_count;
      }
      if (child_total != node.group_count) {
        throw StructureError("hierarchy: group counts of children of " +
                             node.id + " sum to " +
                             std::to_string(child_total) + ", expected " +
                             std::to_string(node.group_count));
      }
    }
    if (!node.hist.counts.empty() &&
        node.hist.total_groups() != node.group_count) {
      throw StructureError("hierarchy: histogram total at " + node.id +
                           " differs from public G");
    }
  }
}

}  // namespace coc
