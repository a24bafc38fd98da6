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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coc/consistency.hpp"
#include "coc/dataset.hpp"
#include "coc/estimators.hpp"
#include "coc/hierarchy.hpp"

namespace coc {

enum class Algorithm { kTopDown, kBottomUp, kIndependent };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(MergeRule r);
std::optional<MergeRule> parse_merge_rule(std::string_view name);

// A seeded multi-trial experiment. Dataset comes either from the three CSV
// tables or from the synthetic generator. Trial t runs the pipeline with
// seed base_seed + t.
struct ExperimentConfig {
  std::string entities_path;
  std::string groups_path;
  std::string hierarchy_path;
  std::optional<SynthParams> synth;

  double epsilon = 1.0;                   // total budget
  std::vector<double> level_epsilons;     // optional per-level override
  std::vector<EstimatorKind> kinds;       // per level; one entry broadcasts
  Algorithm algorithm = Algorithm::kTopDown;
  MergeRule merge = MergeRule::kWeighted;
  std::int64_t k_bound = 100000;
  bool estimate_k = false;                // spend epsilon_k on a private K
  double epsilon_k = kDefaultSizeBoundEpsilon;
  int trials = 10;
  std::uint64_t base_seed = 1;
};

// Per-level aggregate over trials. mean_emd averages, per trial, the EMD
// over the level's nodes; std_mean is the empirical standard deviation of
// the per-trial values divided by sqrt(trials). sum_emd_mean is the
// trial-mean of the per-level EMD sum (auxiliary view).
struct LevelSummary {
  int level = 0;
  std::int64_t nodes = 0;
  double mean_emd = 0.0;
  double std_mean = 0.0;
  double sum_emd_mean = 0.0;
  double omniscient = 0.0;
  std::vector<double> per_trial;  // per-trial mean-over-nodes EMD
};

struct ExperimentReport {
  std::vector<LevelSummary> levels;
  int trials = 0;
  std::uint64_t base_seed = 0;
  double eps_total = 0.0;
  std::vector<double> eps_per_level;
  double eps_k = 0.0;  // budget spent on estimating K (0 when K was public)
  std::string algorithm;
  std::string merge;
  std::vector<std::string> kind_names;
  std::int64_t k_bound = 0;
  DatasetStats data_stats;

  // Wall-clock per phase, in seconds. Excluded from determinism checks.
  struct Timing {
    double load_s = 0.0;
    double pipeline_s = 0.0;
    double total_s = 0.0;
  } timing;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Error reference of the omniscient baseline, per level: the number of
// distinct group sizes present at the level's nodes times sqrt(2)/eps_level
// (the standard deviation of the Laplace noise it would add to each
// existing size).
std::vector<double> omniscient_error(const HierarchyTree& tree,
                                     std::span<const double> eps_per_level);

// Report serialization: full structured JSON (round-trips), a CSV with one
// row per (level, trial), and plot-ready series of mean EMD with one-std
// bars against the per-level budget.
void write_report_json(const ExperimentReport& report, std::ostream& out);
ExperimentReport read_report_json(std::istream& in);
void write_report_csv(const ExperimentReport& report, std::ostream& out);
void write_report_plotdata(const ExperimentReport& report, std::ostream& out);

}  // namespace coc
