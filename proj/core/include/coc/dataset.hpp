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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coc/error.hpp"
#include "coc/hierarchy.hpp"
#include "coc/rng.hpp"

namespace coc {

// The three-table input schema. Entities is private; Groups and Hierarchy
// are public. Ids are opaque strings.
struct Dataset {
  struct Region {
    std::string region_id;
    std::vector<std::string> path;  // level_0 .. level_L
  };

  std::vector<std::pair<std::string, std::string>> entities;  // entity, group
  std::vector<std::pair<std::string, std::string>> groups;    // group, region
  std::vector<Region> regions;
};

// Loads and validates the three CSV tables. Headers must be exactly
// `entity_id,group_id`, `group_id,region_id`, and
// `region_id,level_0,...,level_L`. Referential integrity is enforced:
// MissingGroup / MissingRegion / DuplicateId / MalformedRow errors carry
// the file and line number.
Dataset load_tables(const std::filesystem::path& entities_path,
                    const std::filesystem::path& groups_path,
                    const std::filesystem::path& hierarchy_path);

// Builds the region tree with true count-of-counts histograms: leaf
// histograms from group sizes (groups with no entities count at size 0),
// internal histograms by element-wise summation, G from the Groups table.
HierarchyTree build_histograms(const Dataset& ds);

// Parameters of the partially synthetic housing generator. Every state
// shares the base distribution over sizes 1..7; sizes >= 8 follow a
// binomial chain whose expected neighbor ratio equals count(7)/count(6)
// (or tail_ratio when set); a fixed number of outlier groups get sizes
// uniform on outlier_range. Groups are assigned to counties proportionally
// to the county weights (equal when unset). counties_per_state == 0 builds
// a two-level (root/state) hierarchy.
struct SynthParams {
  int states = 5;
  int counties_per_state = 4;
  std::array<std::int64_t, 7> base_counts = {300, 380, 180, 140, 70, 25, 10};
  std::optional<double> tail_ratio;           // default: base[6]/base[5]
  int outlier_count = 50;
  std::pair<std::int64_t, std::int64_t> outlier_range = {1, 10000};
  std::vector<double> county_weights;         // per state; empty = equal
  std::uint64_t seed = 1;
};

Dataset gen_synthetic_housing(const SynthParams& params, SeededRng& rng);

// Convenience overload seeding the generator from params.seed.
Dataset gen_synthetic_housing(const SynthParams& params);

struct DatasetStats {
  std::int64_t group_count = 0;
  std::int64_t person_count = 0;
  std::int64_t unique_size_count = 0;
};

DatasetStats dataset_stats(const Dataset& ds);

// Writes the three tables (entities.csv, groups.csv, hierarchy.csv) into a
// directory.
void save_tables(const Dataset& ds, const std::filesystem::path& dir);

}  // namespace coc
