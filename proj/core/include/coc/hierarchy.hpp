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
#include <string>
#include <vector>

#include "coc/error.hpp"
#include "coc/histogram.hpp"

namespace coc {

// One region of the hierarchy. `id` is the full path prefix (levels joined
// with '/'), which is unique even when leaf names repeat across parents.
struct HierarchyNode {
  std::string id;
  int level = 0;
  int parent = -1;                // index into HierarchyTree::nodes; -1 at root
  std::vector<int> children;      // indices into HierarchyTree::nodes
  std::int64_t group_count = 0;   // public G
  CountHistogram hist;            // true H (may be empty when data is absent)
};

// Region tree with the root at level 0 and leaves at level L.
struct HierarchyTree {
  std::vector<HierarchyNode> nodes;          // index 0 is the root
  std::vector<std::vector<int>> by_level;    // node indices per level

  int levels() const { return static_cast<int>(by_level.size()); }
  const HierarchyNode& root() const { return nodes.at(0); }
  bool is_leaf(int idx) const { return nodes[idx].children.empty(); }

  // Recomputes by_level from node levels and checks structural invariants:
  // contiguous levels starting at 0, a single root, every non-root node's
  // parent one level up, and parent G equal to the sum of child G.
  // Throws StructureError on violation.
  void finalize();
};

}  // namespace coc
